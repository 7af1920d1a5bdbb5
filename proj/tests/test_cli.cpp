#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#ifdef _WIN32
#error "the command-line tests assume a POSIX shell"
#endif
#include <sys/wait.h>
#include <unistd.h>

namespace {

namespace fs = std::filesystem;

const std::string& binary() {
  static const std::string path = [] {
    const char* env = std::getenv("PARMAG_BIN");
    REQUIRE_MESSAGE(env != nullptr,
                    "PARMAG_BIN must point at the command-line binary");
    return std::string(env);
  }();
  return path;
}

const fs::path& work_dir() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() /
                 ("parmag_cli_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

int run(const std::string& args) {
  const int rc = std::system((binary() + " " + args).c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path);
  REQUIRE_MESSAGE(in.good(), "missing expected output file ", path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) cells.push_back(cell);
  return cells;
}

// Data portion of a CSV output: header plus rows, comments stripped.
std::vector<std::vector<std::string>> payload_of(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  for (const auto& line : lines_of(text))
    if (!line.empty() && line[0] != '#') rows.push_back(split_csv(line));
  return rows;
}

std::string summary_of(const std::string& text, const std::string& key) {
  const std::string prefix = "## " + key + " = ";
  for (const auto& line : lines_of(text))
    if (line.rfind(prefix, 0) == 0) return line.substr(prefix.size());
  FAIL("summary key not found: ", key);
  return {};
}

double cell_number(const std::vector<std::vector<std::string>>& payload,
                   std::size_t row, const std::string& column) {
  const auto& header = payload.at(0);
  for (std::size_t c = 0; c < header.size(); ++c)
    if (header[c] == column) return std::strtod(payload.at(row)[c].c_str(), nullptr);
  FAIL("column not found: ", column);
  return 0;
}

}  // namespace

TEST_CASE("cli basics: help, version, and argument errors") {
  CHECK(run("--help > /dev/null") == 0);
  CHECK(run("--version > /dev/null") == 0);
  CHECK(run("> /dev/null 2>&1") == 2);             // a subcommand is required
  CHECK(run("--bogus > /dev/null 2>&1") == 2);     // unknown option
  CHECK(run("steady --set nonsense=1 2> /dev/null") == 2);
  CHECK(run("steady --format xml 2> /dev/null") == 2);
}

TEST_CASE("steady command emits the pinned resonant state") {
  const fs::path out = work_dir() / "steady.csv";
  const int code = run(
      "steady --set symmetric.delta=3 --set symmetric.g=2 "
      "--set symmetric.G=0.9 --output " + out.string());
  REQUIRE(code == 0);
  const std::string text = read_file(out);

  CHECK(std::strtod(summary_of(text, "spin_current").c_str(), nullptr) ==
        doctest::Approx(52.0 / 9).epsilon(1e-12));
  const auto payload = payload_of(text);
  REQUIRE(payload.size() == 7);  // header + six mode rows
  CHECK(payload[3][0] == "m2");
  CHECK(cell_number(payload, 3, "re_amplitude") ==
        doctest::Approx(2.0).epsilon(1e-12));
  CHECK(cell_number(payload, 3, "im_amplitude") ==
        doctest::Approx(-4.0 / 3).epsilon(1e-12));

  // the resolved model parameters are echoed for reproducibility
  CHECK(text.find("# command = steady\n") != std::string::npos);
  CHECK(text.find("# model.delta_c = 3\n") != std::string::npos);
  CHECK(text.find("# model.G = 0.90000000000000002\n") != std::string::npos);
}

TEST_CASE("steady command maps domain failures to exit code 3") {
  CHECK(run("steady --set symmetric.delta=3 --set symmetric.g=2 "
            "--set symmetric.G=1.05 > /dev/null 2> /dev/null") == 3);
}

TEST_CASE("steady command warns when the solve is poorly conditioned") {
  const fs::path out = work_dir() / "steady_warn.csv";
  const fs::path err = work_dir() / "steady_warn.log";
  const int code = run(
      "steady --set symmetric.delta=3 --set symmetric.g=2 "
      "--set symmetric.G=0.945 --set run.cond_warn=1e3 --output " +
      out.string() + " 2> " + err.string());
  REQUIRE(code == 0);
  CHECK(read_file(err).find("warning") != std::string::npos);
}

TEST_CASE("enhance command: single point, curve, and sentinel") {
  const fs::path single = work_dir() / "enhance_single.csv";
  REQUIRE(run("enhance --set symmetric.delta=3 --set symmetric.g=2 "
              "--set symmetric.G=0 --output " + single.string()) == 0);
  const auto one = payload_of(read_file(single));
  REQUIRE(one.size() == 2);
  CHECK(cell_number(one, 1, "F") == doctest::Approx(1.0).epsilon(1e-12));

  const fs::path curve = work_dir() / "enhance_curve.csv";
  REQUIRE(run("enhance --set symmetric.delta=3 --set symmetric.g=2 "
              "--set sweep.x=G --set sweep.x_min=0 --set sweep.x_max=2 "
              "--set sweep.x_count=5 --output " + curve.string()) == 0);
  const std::string text = read_file(curve);
  const auto rows = payload_of(text);
  REQUIRE(rows.size() == 6);
  CHECK(cell_number(rows, 1, "F") == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(rows[5][1] == "unstable");  // G = 2 lies beyond the boundary

  // sweeping anything else under `enhance` is a configuration error
  CHECK(run("enhance --set sweep.x=delta --set sweep.x_count=3 "
            "2> /dev/null") == 2);
  // the drive-off reference current vanishes: domain error
  CHECK(run("enhance --set symmetric.delta=3 --set symmetric.g=2 "
            "--set symmetric.omega_rabi=0 2> /dev/null") == 3);
}

TEST_CASE("eig command emits the reduced four-mode spectrum") {
  const fs::path out = work_dir() / "eig.csv";
  REQUIRE(run("eig --set eig.form=reduced --set symmetric.delta=3 "
              "--set symmetric.g=2 --set symmetric.G=0.9 --output " +
              out.string()) == 0);
  const std::string text = read_file(out);
  CHECK(summary_of(text, "stable") == "true");
  const auto rows = payload_of(text);
  REQUIRE(rows.size() == 5);  // header + four eigenvalues
  // eigenvalues are listed in the (Im, Re) sort order
  double previous = -1e9;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const double im = cell_number(rows, r, "im_lambda");
    CHECK(im >= previous);
    previous = im;
    CHECK(im < 0);  // stable spectrum decays
  }
}

TEST_CASE("phase boundary command matches the decoupled closed form") {
  const fs::path out = work_dir() / "boundary.csv";
  REQUIRE(run("phase --set phase.mode=boundary --set sweep.x=delta "
              "--set sweep.x_min=-2 --set sweep.x_max=2 --set sweep.x_count=5 "
              "--output " + out.string()) == 0);
  const auto rows = payload_of(read_file(out));
  REQUIRE(rows.size() == 6);
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const double delta = cell_number(rows, r, "delta");
    const double expected = std::sqrt(delta * delta + 1) / 2;
    CHECK(cell_number(rows, r, "g_c") ==
          doctest::Approx(expected).epsilon(3e-6));
  }
}

TEST_CASE("phase grid command emits stability as a 0/1 field") {
  const fs::path out = work_dir() / "grid.csv";
  REQUIRE(run("phase --set symmetric.g=2 --set sweep.x=delta "
              "--set sweep.x_min=-6 --set sweep.x_max=6 --set sweep.x_count=5 "
              "--set sweep.y=G --set sweep.y_min=0 --set sweep.y_max=3 "
              "--set sweep.y_count=5 --output " + out.string()) == 0);
  const std::string text = read_file(out);
  CHECK(text.find("# sweep.x = delta\n") != std::string::npos);
  CHECK(text.find("# sweep.y_count = 5\n") != std::string::npos);
  const auto rows = payload_of(text);
  REQUIRE(rows.size() == 26);  // header + 5 x 5 points
  int stable_count = 0;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const double v = cell_number(rows, r, "stable");
    CHECK((v == 0.0 || v == 1.0));
    stable_count += v == 1.0;
  }
  CHECK(stable_count > 0);
  CHECK(stable_count < 25);
}

TEST_CASE("tracks command reports the long-lived mode dip") {
  const fs::path out = work_dir() / "tracks.csv";
  REQUIRE(run("tracks --set symmetric.g=2 --set symmetric.G=0.9 "
              "--set tracks.count=121 --output " + out.string()) == 0);
  const std::string text = read_file(out);
  const double min_im =
      std::strtod(summary_of(text, "min_abs_im").c_str(), nullptr);
  const double at =
      std::strtod(summary_of(text, "min_abs_im_delta").c_str(), nullptr);
  CHECK(min_im < 0.06);
  CHECK(at > 2.8);
  CHECK(at < 3.2);
  const auto rows = payload_of(text);
  REQUIRE(rows.size() == 122);
  CHECK(rows[0].size() == 10);  // delta, four pairs, ambiguity flag
}

TEST_CASE("lyapunov command reports subordinate quantum corrections") {
  const fs::path out = work_dir() / "lyapunov.csv";
  REQUIRE(run("lyapunov --set symmetric.delta=3 --set symmetric.g=2 "
              "--set symmetric.G=0.9 --set symmetric.omega_rabi=1e5 "
              "--output " + out.string()) == 0);
  const std::string text = read_file(out);
  CHECK(std::strtod(summary_of(text, "quantum_m2_occupancy").c_str(),
                    nullptr) == doctest::Approx(1.0096043781137924).epsilon(1e-6));
  CHECK(std::strtod(summary_of(text, "ratio_to_semiclassical").c_str(),
                    nullptr) < 1e-4);
  REQUIRE(payload_of(text).size() == 37);  // header + 36 moment entries
}

TEST_CASE("units command reports the operating drive-to-linewidth ratio") {
  const fs::path out = work_dir() / "units.csv";
  REQUIRE(run("units --output " + out.string()) == 0);
  const auto rows = payload_of(read_file(out));
  REQUIRE(rows.size() == 6);
  bool seen = false;
  for (std::size_t r = 1; r < rows.size(); ++r)
    if (rows[r][0] == "omega_over_gamma_ref") {
      seen = true;
      CHECK(std::strtod(rows[r][1].c_str(), nullptr) ==
            doctest::Approx(1e5).epsilon(1e-9));
    }
  CHECK(seen);
}

TEST_CASE("csv outputs reproduce themselves through the echoed config") {
  const fs::path first = work_dir() / "round1.csv";
  REQUIRE(run("steady --set symmetric.delta=3 --set symmetric.g=2 "
              "--set symmetric.G=0.9 --output " + first.string()) == 0);
  const std::string text = read_file(first);

  // extract `# key = value` lines into a fresh config file
  const fs::path cfg = work_dir() / "extracted.cfg";
  {
    std::ofstream out(cfg);
    for (const auto& line : lines_of(text))
      if (line.rfind("# ", 0) == 0) out << line.substr(2) << "\n";
  }
  const fs::path second = work_dir() / "round2.csv";
  REQUIRE(run("steady --config " + cfg.string() + " --output " +
              second.string()) == 0);
  CHECK(read_file(second) == text);  // byte-identical reproduction
}

TEST_CASE("json outputs parse and carry the schema version") {
  const fs::path out = work_dir() / "steady.json";
  REQUIRE(run("steady --set symmetric.delta=3 --set symmetric.g=2 "
              "--set symmetric.G=0.9 --format json --output " +
              out.string()) == 0);
  const auto doc = nlohmann::json::parse(read_file(out));
  CHECK(doc["schema_version"] == 1);
  CHECK(doc["command"] == "steady");
  CHECK(doc["config"]["model.g1"] == "2");
  REQUIRE(doc["rows"].size() == 6);
  CHECK(doc["rows"][2][0] == "m2");
  CHECK(doc["rows"][2][1].get<double>() == doctest::Approx(2.0).epsilon(1e-12));
}
