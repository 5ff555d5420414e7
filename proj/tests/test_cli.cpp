#include <doctest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <nlohmann/json.hpp>
#include <sys/wait.h>

#include "ecgz/metrics.hpp"
#include "ecgz/record.hpp"
#include "support/synth.hpp"

using namespace ecgz;
namespace fs = std::filesystem;

namespace {

struct Run {
  int status = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(ECGZ_CLI_PATH) + " " + args + " 2>&1";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::array<char, 4096> buf{};
  while (std::size_t n = fread(buf.data(), 1, buf.size(), p)) r.out.append(buf.data(), n);
  const int st = pclose(p);
  r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

struct Workspace {
  fs::path dir = fs::temp_directory_path() / "ecgz_cli_test";
  EcgRecord rec;
  Workspace() {
    fs::remove_all(dir);
    fs::create_directories(dir);
    testing::SynthOptions so;
    so.seconds = 20;
    rec = testing::synth_ecg(so);
    const auto text = to_csv(rec.samples);
    write_file_bytes(dir / "rec.csv", std::vector<std::uint8_t>(text.begin(), text.end()));
  }
  ~Workspace() { fs::remove_all(dir); }
  std::string p(const std::string& name) const { return (dir / name).string(); }
};

std::string last_line(const std::string& s) {
  auto end = s.find_last_not_of('\n');
  auto start = s.rfind('\n', end);
  return s.substr(start == std::string::npos ? 0 : start + 1, end - (start == std::string::npos ? 0 : start + 1) + 1);
}

}  // namespace

TEST_CASE("compress and decompress a CSV record") {
  Workspace ws;
  const auto c = run("compress " + ws.p("rec.csv") + " " + ws.p("rec.ecgz") + " --mode 2d --delta 8");
  REQUIRE(c.status == 0);
  const auto report = nlohmann::json::parse(last_line(c.out));
  CHECK(report["mode"] == "2d");
  CHECK(report["compressed_bits"] == fs::file_size(ws.p("rec.ecgz")) * 8);

  const auto d = run("decompress " + ws.p("rec.ecgz") + " " + ws.p("out.csv"));
  REQUIRE(d.status == 0);
  REQUIRE(fs::exists(ws.p("out.csv")));
  REQUIRE(fs::exists(ws.p("out.csv.json")));
  const auto out = read_record(ws.p("out.csv"));
  CHECK(out.samples.size() == ws.rec.samples.size());
  CHECK(report["prd"].get<double>() == doctest::Approx(prd(ws.rec.samples, out.samples)).epsilon(1e-12));

  const auto sidecar = nlohmann::json::parse(std::string(
      [&] { auto b = read_file_bytes(ws.p("out.csv.json")); return std::string(b.begin(), b.end()); }()));
  CHECK(sidecar["mode"] == "2d");
  CHECK(sidecar["delta"] == 8.0);
}

TEST_CASE("rate-controlled compression") {
  Workspace ws;
  const auto c = run("compress " + ws.p("rec.csv") + " " + ws.p("rec.ecgz") + " --target-prd 1.0");
  REQUIRE(c.status == 0);
  const auto report = nlohmann::json::parse(last_line(c.out));
  const bool met = report["target_met"];
  CHECK((!met || std::abs(report["prd"].get<double>() - 1.0) <= 0.01));
  CHECK(met);

  CHECK(run("compress " + ws.p("rec.csv") + " " + ws.p("x.ecgz") + " --delta 1 --target-prd 1").status != 0);
  CHECK(run("compress " + ws.p("rec.csv") + " " + ws.p("x.ecgz")).status != 0);
}

TEST_CASE("errors") {
  Workspace ws;
  const auto missing = run("compress " + ws.p("nope.csv") + " " + ws.p("x.ecgz") + " --delta 1");
  CHECK(missing.status != 0);
  CHECK(missing.out.find("no such file") != std::string::npos);

  REQUIRE(run("compress " + ws.p("rec.csv") + " " + ws.p("rec.ecgz") + " --delta 4").status == 0);
  auto bytes = read_file_bytes(ws.p("rec.ecgz"));
  bytes[bytes.size() / 2] ^= 0x10;
  write_file_bytes(ws.p("bad.ecgz"), bytes);
  const auto bad = run("decompress " + ws.p("bad.ecgz") + " " + ws.p("bad.csv"));
  CHECK(bad.status != 0);
  CHECK(bad.out.find("error:") != std::string::npos);

  CHECK(run("bench " + ws.p("emptydir")).status != 0);
  fs::create_directories(ws.dir / "emptydir");
  const auto empty = run("bench " + ws.p("emptydir") + " --out " + ws.p("res"));
  CHECK(empty.status != 0);
  CHECK(empty.out.find("no records found") != std::string::npos);
}

TEST_CASE("diagnostic subcommands") {
  Workspace ws;
  const auto d = run("detect " + ws.p("rec.csv"));
  REQUIRE(d.status == 0);
  CHECK(d.out.rfind("peak_index\n", 0) == 0);

  REQUIRE(run("segment " + ws.p("rec.csv") + " -o " + ws.p("seg.csv")).status == 0);
  CHECK(fs::file_size(ws.p("seg.csv")) > 0);
  REQUIRE(run("transform " + ws.p("rec.csv") + " -o " + ws.p("t.csv")).status == 0);
  REQUIRE(run("transform " + ws.p("rec.csv") + " --kind dwt2d -o " + ws.p("t2.csv")).status == 0);

  for (const char* isa : {"scalar", "auto"}) {
    CHECK(run(std::string("--isa ") + isa + " compress " + ws.p("rec.csv") + " " + ws.p("i.ecgz") + " --delta 3")
              .status == 0);
  }
}
