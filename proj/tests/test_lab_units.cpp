#include <doctest.h>

#include <cmath>

#include "parmag/lab_units.hpp"

using namespace parmag;

TEST_CASE("physical constants are pinned exactly") {
  CHECK(constants::mu0 == 1.25663706212e-6);
  CHECK(constants::hbar == 1.054571817e-34);
  CHECK(constants::c_light == 299792458.0);
  CHECK(constants::gamma_e == 1.76085963023e11);
}

TEST_CASE("default conversions reproduce pinned reference values") {
  const LabParams<double> lab;
  CHECK(vacuum_field(lab.omega_c, lab.v_c) ==
        doctest::Approx(2.0404123751824264e-12).epsilon(1e-12));
  CHECK(coupling_g(lab.n1, lab.omega_c, lab.v_c) ==
        doctest::Approx(401696171.20693964).epsilon(1e-12));
  CHECK(rabi_omega(lab.rho1, lab.d1, lab.d_p) ==
        doctest::Approx(15117149991825.568).epsilon(1e-12));
  // the default half-linewidth is fitted so this ratio is exactly 1e5
  CHECK(rabi_omega(lab.rho1, lab.d1, lab.d_p) / default_gamma_lab ==
        doctest::Approx(1e5).epsilon(1e-12));
}

TEST_CASE("conversions obey their square-root scaling laws") {
  const LabParams<double> lab;
  const double b = vacuum_field(lab.omega_c, lab.v_c);
  CHECK(vacuum_field(4 * lab.omega_c, lab.v_c) ==
        doctest::Approx(2 * b).epsilon(1e-12));
  CHECK(vacuum_field(lab.omega_c, 4 * lab.v_c) ==
        doctest::Approx(b / 2).epsilon(1e-12));

  const double g = coupling_g(lab.n1, lab.omega_c, lab.v_c);
  CHECK(coupling_g(4 * lab.n1, lab.omega_c, lab.v_c) ==
        doctest::Approx(2 * g).epsilon(1e-12));
  CHECK(coupling_g(0.0, lab.omega_c, lab.v_c) == 0.0);

  const double omega = rabi_omega(lab.rho1, lab.d1, lab.d_p);
  CHECK(rabi_omega(4 * lab.rho1, lab.d1, lab.d_p) ==
        doctest::Approx(2 * omega).epsilon(1e-12));
  CHECK(rabi_omega(lab.rho1, lab.d1, 4 * lab.d_p) ==
        doctest::Approx(2 * omega).epsilon(1e-12));
  CHECK(rabi_omega(lab.rho1, lab.d1, 0.0) == 0.0);
}

TEST_CASE("conversions reject non-physical inputs") {
  const LabParams<double> lab;
  CHECK_THROWS_AS((void)vacuum_field(0.0, lab.v_c), invalid_parameter);
  CHECK_THROWS_AS((void)vacuum_field(lab.omega_c, -1.0), invalid_parameter);
  CHECK_THROWS_AS((void)coupling_g(-1.0, lab.omega_c, lab.v_c),
                  invalid_parameter);
  CHECK_THROWS_AS((void)rabi_omega(0.0, lab.d1, lab.d_p), invalid_parameter);
  CHECK_THROWS_AS((void)rabi_omega(lab.rho1, 0.0, lab.d_p), invalid_parameter);
  CHECK_THROWS_AS((void)rabi_omega(lab.rho1, lab.d1, -1.0), invalid_parameter);
}
