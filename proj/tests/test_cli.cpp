#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

#include "arcgram/io.hpp"
#include "json.hpp"

using namespace arcgram;
namespace fs = std::filesystem;

namespace {

const std::string data = ARCGRAM_TEST_DATA;

fs::path scratch() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / ("arcgram_cli_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

int run(const std::string& args) {
  const std::string cmd = std::string(ARCGRAM_CLI) + " " + args + " > " + (scratch() / "stdout.txt").string() +
                          " 2> " + (scratch() / "stderr.txt").string();
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string write(const std::string& name, const std::string& text) {
  const fs::path p = scratch() / name;
  std::ofstream(p) << text;
  return p.string();
}

struct Line {
  double x1, y1, x2, y2;
};

std::vector<Line> ridges(const std::string& svg) {
  std::vector<Line> out;
  const std::regex re(R"re(class="ridge"[^>]*x1="([^"]+)" y1="([^"]+)" x2="([^"]+)" y2="([^"]+)")re");
  for (auto it = std::sregex_iterator(svg.begin(), svg.end(), re); it != std::sregex_iterator(); ++it) {
    out.push_back({std::stod((*it)[1]), std::stod((*it)[2]), std::stod((*it)[3]), std::stod((*it)[4])});
  }
  return out;
}

std::string single_face_doc(const std::string& verts, const std::string& ring) {
  return R"({"vertices": )" + verts + R"(, "faces": [{"name": "p", "ring": )" + ring + R"(, "weight": 1}]})";
}

}  // namespace

TEST_CASE("two squares with a transfer within capacity end with zero error") {
  const std::string report = (scratch() / "two.json").string();
  CHECK(run("build " + data + "/two_squares.json --out-report " + report) == 0);
  const auto j = nlohmann::json::parse(slurp(report));
  for (const auto& f : j["faces"]) CHECK(f["error"].get<double>() <= 1e-9);
  CHECK(slurp(scratch() / "stdout.txt").rfind("avg success rate 1, avg error ", 0) == 0);
}

TEST_CASE("malformed input exits with 2") {
  CHECK(run("build " + write("bad.json", "{\"vertices\": [") ) == 2);
  CHECK(run("build " + write("range.json", single_face_doc("[[0,0],[1,0]]", "[0,1,2]"))) == 2);
  CHECK(run("build " + scratch().string() + "/missing.json") == 2);
  CHECK(run("build " + data + "/two_squares.json --mode sideways") == 2);
  CHECK(run("build " + data + "/two_squares.json --geom-eps 0") == 2);
  CHECK(slurp(scratch() / "stderr.txt").size() > 0);
}

TEST_CASE("3x3 grid report satisfies the error identity") {
  const std::string report = (scratch() / "grid.json").string();
  const std::string net = (scratch() / "net.json").string();
  CHECK(run("build " + data + "/grid3x3.json --out-report " + report + " --dump-network " + net) == 0);
  const auto j = nlohmann::json::parse(slurp(report));
  double total = 0;
  for (const auto& f : j["faces"]) total += std::abs(f["b"].get<double>() - f["t"].get<double>());
  const double D = j["summary"]["demand"].get<double>();
  const double F = j["summary"]["flow"].get<double>();
  CHECK(total == doctest::Approx(2 * (D - F)).epsilon(1e-8));
  CHECK(j["summary"]["total_error"].get<double>() == doctest::Approx(total).epsilon(1e-9));
  CHECK(nlohmann::json::parse(slurp(net))["value"].get<double>() == doctest::Approx(F).epsilon(1e-9));
}

TEST_CASE("separate weights file wins over inline weights") {
  const std::string a = (scratch() / "inline.json").string();
  const std::string b = (scratch() / "file.json").string();
  CHECK(run("build " + data + "/grid3x3.json --out-report " + a) == 0);
  CHECK(run("build " + data + "/grid3x3.json --weights " + data + "/grid3x3_weights.csv --out-report " + b) == 0);
  const auto ja = nlohmann::json::parse(slurp(a));
  const auto jb = nlohmann::json::parse(slurp(b));
  // r0c0 carries weight 1 inline and 2 in the file (of totals 20 and 20).
  CHECK(jb["faces"][0]["t"].get<double>() == doctest::Approx(2 * ja["faces"][0]["t"].get<double>()));
  CHECK(run("build " + data + "/grid3x3.json --weights " + write("w.csv", "nowhere,3\n")) == 2);
}

TEST_CASE("repeated runs are byte-identical") {
  const fs::path d = scratch();
  for (const char* run_id : {"1", "2"}) {
    CHECK(run("build " + data + "/grid3x3.json --out-svg " + (d / ("g" + std::string(run_id) + ".svg")).string() +
              " --out-report " + (d / ("g" + std::string(run_id) + ".json")).string()) == 0);
  }
  CHECK(slurp(d / "g1.svg") == slurp(d / "g2.svg"));
  CHECK(slurp(d / "g1.json") == slurp(d / "g2.json"));
}

TEST_CASE("skeleton of a square shows both diagonals") {
  const std::string in = write("sq.json", single_face_doc("[[0,0],[2,0],[2,2],[0,2]]", "[0,1,2,3]"));
  const std::string out = (scratch() / "sq.svg").string();
  CHECK(run("skeleton " + in + " --face p --out-svg " + out) == 0);
  const auto rs = ridges(slurp(out));
  REQUIRE(rs.size() == 4);
  for (const Line& l : rs) {
    // every ridge runs from a corner to the center, along a diagonal
    CHECK(std::abs(std::abs(l.x2 - l.x1) - std::abs(l.y2 - l.y1)) < 1e-9);
    CHECK(std::hypot(l.x2 - l.x1, l.y2 - l.y1) == doctest::Approx(std::sqrt(2.0)));
  }
  CHECK(slurp(out).find("class=\"max-arc\"") != std::string::npos);
  CHECK(run("skeleton " + in + " --face nothere") == 2);
}

TEST_CASE("skeleton of a 4x2 rectangle has a ridge of length 2") {
  const std::string in = write("rect.json", single_face_doc("[[0,0],[4,0],[4,2],[0,2]]", "[0,1,2,3]"));
  const std::string out = (scratch() / "rect.svg").string();
  CHECK(run("skeleton " + in + " --face 0 --out-svg " + out) == 0);
  int spine = 0;
  for (const Line& l : ridges(slurp(out))) {
    if (std::abs(l.y1 - 1) < 1e-9 && std::abs(l.y2 - 1) < 1e-9 && std::abs(std::abs(l.x2 - l.x1) - 2) < 1e-9) ++spine;
  }
  CHECK(spine == 1);
}

TEST_CASE("skeleton of an L shape has a ridge from the reflex vertex") {
  const std::string in =
      write("l.json", single_face_doc("[[0,0],[4,0],[4,2],[2,2],[2,4],[0,4]]", "[0,1,2,3,4,5]"));
  const std::string out = (scratch() / "l.svg").string();
  CHECK(run("skeleton " + in + " --face p --out-svg " + out) == 0);
  bool reflex = false;
  for (const Line& l : ridges(slurp(out))) {
    if ((std::hypot(l.x1 - 2, l.y1 - 2) < 1e-9) || (std::hypot(l.x2 - 2, l.y2 - 2) < 1e-9)) reflex = true;
  }
  CHECK(reflex);
}

TEST_CASE("gadget subcommand") {
  const std::string inst = (scratch() / "one.json").string();
  CHECK(run("gadget " + write("one.txt", "1 2 3\n") + " --out " + inst) == 0);
  const auto doc = parse_subdivision(slurp(inst));
  CHECK(doc.allow_zero_weights);
  const Subdivision s = build_from_polygons(doc.polygons(), 1e-9);
  CHECK(validate(s).empty());
  const auto w = nlohmann::json::parse(slurp(scratch() / "one.weights.json"));
  CHECK(w.size() == doc.faces.size());

  CHECK(run("gadget " + write("empty.txt", "") + " --out " + (scratch() / "empty.json").string()) == 0);
  CHECK(parse_subdivision(slurp(scratch() / "empty.json")).faces.empty());
  CHECK(run("gadget " + write("mixed.txt", "1 -2 3\n") + " --out " + (scratch() / "m.json").string()) == 2);
}
