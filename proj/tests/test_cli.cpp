#include <catch_amalgamated.hpp>

#include <sys/wait.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <wpb/io.hpp>
#include <wpb/problems.hpp>

using namespace wpb;
namespace fs = std::filesystem;
using Catch::Approx;

namespace
{
auto scratch(const std::string& name)
{
  auto d = fs::temp_directory_path() / ("wpb_cli_test_" + name);
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

int run_cli(const std::string& args, const fs::path& cwd)
{
  std::string cmd = "cd '" + cwd.string() + "' && " + WPB_CLI_PATH + " " + args + " >/dev/null 2>&1";
  int rc = std::system(cmd.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

auto slurp(const fs::path& p)
{
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

auto header_line(const fs::path& p)
{
  std::ifstream in(p);
  std::string meta, cols;
  std::getline(in, meta);
  std::getline(in, cols);
  return std::pair{meta, cols};
}

auto summary(const fs::path& p, const std::string& key) -> std::string
{
  std::ifstream in(p);
  std::string line, tag = "# summary," + key + ",";
  while (std::getline(in, line))
    if (line.rfind(tag, 0) == 0)
      return line.substr(tag.size());
  return {};
}
} // namespace

TEST_CASE("generate writes the PF, one file per WPB, and the config")
{
  auto d = scratch("gen");
  REQUIRE(run_cli("generate --instance EMOP1 --resolution 50 --out g", d) == 0);
  std::size_t wpb_files = 0;
  for (auto& e : fs::directory_iterator(d / "g"))
    wpb_files += e.path().filename().string().rfind("wpb_", 0) == 0;
  CHECK(wpb_files == 6);
  for (auto f : {"pf.csv", "wpb_nu1_1.csv", "wpb_nu2_1-2.csv"}) {
    auto [meta, cols] = header_line(d / "g" / f);
    CHECK(meta.rfind("# {", 0) == 0);
    CHECK(meta.find("\"version\":\"0.1.0\"") != std::string::npos);
    CHECK(meta.find("\"resolution\":50") != std::string::npos);
    CHECK(cols == "f1,f2,f3");
  }
  auto inst = load_config((d / "g" / "instance.cfg").string());
  CHECK(serialize_config(inst) == serialize_config(catalog("EMOP1")));
}

TEST_CASE("inline parameters round-trip through the written config")
{
  auto d = scratch("inline");
  REQUIRE(run_cli("generate --params 'm=3;generator=G2;p=1,2,0.5;ell=3;d=0.6;gap=0.2,0,1;s=1,2,3' --resolution 5 --out g", d) == 0);
  auto text = slurp(d / "g" / "instance.cfg");
  auto again = parse_config(text);
  CHECK(serialize_config(again) == text);
  CHECK(again.params.p == std::vector<double>{1, 2, 0.5});
  CHECK(again.params.gap == std::vector<double>{0.2, 0, 1});
}

TEST_CASE("generate usage errors")
{
  auto d = scratch("genbad");
  CHECK(run_cli("generate --instance EMOP1 --resolution 1", d) == 2);
  CHECK(run_cli("generate --instance EMOP99", d) == 2);
  CHECK(run_cli("generate", d) == 2);
  CHECK(run_cli("generate --instance EMOP1 --config x.cfg", d) == 2);
  CHECK(run_cli("", d) == 2);
  CHECK(run_cli("bogus", d) == 2);
  CHECK(run_cli("generate --config missing.cfg", d) == 1);
}

TEST_CASE("volume: exact and Monte Carlo columns agree")
{
  auto d = scratch("vol");
  REQUIRE(run_cli("volume --m 3 --p 1 --nu 2 --rfree 1.3 --method exact,mc --samples 400000 "
              "--deltas 0,0.01,0.02,0.04,0.06,0.08,0.1,0.15,0.2 --fit --out v.csv",
              d) == 0);
  auto [meta, cols] = header_line(d / "v.csv");
  CHECK(cols == "delta,volume,std_error,method,m,nu,p,r_free");
  CHECK(meta.find("\"methods\":[\"exact\",\"mc\"]") != std::string::npos);
  auto t = io::read_csv((d / "v.csv").string());
  REQUIRE(t.rows.size() == 18);
  CHECK(t.cells[0][3] == "exact");
  CHECK(t.cells[9][3] == "mc");
  CHECK(t.cells[0][5] == "2");
  CHECK(t.rows[0][1] == 0.0);
  CHECK(t.rows[9][1] == 0.0);
  for (std::size_t i = 0; i < 9; ++i) {
    REQUIRE(t.rows[i][0] == t.rows[i + 9][0]);
    CHECK(std::abs(t.rows[i][1] - t.rows[i + 9][1]) <= 3 * t.rows[i + 9][2] + 1e-15);
  }
  CHECK(std::stod(summary(d / "v.csv", "growth_order_exact")) == Approx(2.0).margin(0.15));
  CHECK(std::stod(summary(d / "v.csv", "lowest_active_degree_exact")) == 2.0);
}

TEST_CASE("volume: method and front must be compatible")
{
  auto d = scratch("volbad");
  CHECK(run_cli("volume --p 2 --method exact", d) == 2);
  CHECK(run_cli("volume --p 2 --method nope", d) == 2);
  CHECK(run_cli("volume --m 3 --nu 3", d) == 2);
  CHECK(run_cli("volume --sweep midline --fit", d) == 2);
  CHECK(run_cli("volume --p 0.5 --method pzero,pinf --deltas 0,0.1 --out lim.csv", d) == 0);
  CHECK(header_line(d / "lim.csv").second == "delta,volume,std_error,method,m,nu,p,r_free");
}

TEST_CASE("volume: midline sweep header")
{
  auto d = scratch("mid");
  REQUIRE(run_cli("volume --sweep midline --p 1 --nu 2 --positions 0,0.5,1 --out mid.csv", d) == 0);
  CHECK(header_line(d / "mid.csv").second == "position,volume,std_error,method,m,nu,p,r_free");
}

TEST_CASE("fit reads a curve and reports the sparsity pattern")
{
  auto d = scratch("fit");
  {
    std::ofstream c(d / "c.csv");
    c << "delta,v\n";
    for (int i = 1; i <= 25; ++i) {
      double x = 0.02 * i;
      c << x << ',' << 0.3 * x * x + 0.47 * x * x * x << '\n';
    }
  }
  REQUIRE(run_cli("fit --input c.csv --out f.csv", d) == 0);
  CHECK(header_line(d / "f.csv").second == "degree,coefficient,lambda,tag");
  CHECK(summary(d / "f.csv", "lowest_active_degree") == "2");
  auto f = io::read_csv((d / "f.csv").string());
  CHECK(f.cells[0][3] == "c");

  // a sweep file: one method picked out of the long format
  REQUIRE(run_cli("volume --nu 1 --method exact,pinf --out s.csv", d) == 0);
  REQUIRE(run_cli("fit --input s.csv --method exact --out g.csv", d) == 0);
  CHECK(summary(d / "g.csv", "lowest_active_degree") == "1");
  CHECK(io::read_csv((d / "g.csv").string()).cells[0][3] == "s:exact");
  CHECK(run_cli("fit --input c.csv --degree 30", d) == 2);
  CHECK(run_cli("fit --input nothere.csv", d) == 1);
}

TEST_CASE("evolve is deterministic and echoes its configuration")
{
  auto d = scratch("evo");
  const std::string common = "evolve --instance EMOP2 --runs 1 --seed 7 --budget 1820 --resolution 40 ";
  REQUIRE(run_cli(common + "--out a", d) == 0);
  REQUIRE(run_cli(common + "--out b", d) == 0);
  for (auto f : {"run_0.csv", "gamma.csv", "metrics.csv"})
    CHECK(slurp(d / "a" / f) == slurp(d / "b" / f));
  CHECK(header_line(d / "a" / "gamma.csv").second == "instance,algorithm,seed,nu,gamma");
  CHECK(header_line(d / "a" / "metrics.csv").second == "instance,algorithm,seed,metric_name,value");
  auto [rmeta, rcols] = header_line(d / "a" / "run_0.csv");
  CHECK(rcols == "generation,member_index,f1,f2,f3");
  CHECK(rmeta.find("\"run_seed\":7") != std::string::npos);
  auto g = io::read_csv((d / "a" / "gamma.csv").string());
  REQUIRE(g.cells.size() == 2);
  CHECK(g.cells[0][0] == "EMOP2");
  CHECK(g.cells[0][1] == "pareto_crowding");
  CHECK(g.cells[0][2] == "7");

  REQUIRE(run_cli("evolve --instance EMOP2 --runs 1 --budget 910 --resolution 20 --select decomposition --rho 0.05 --out c", d) ==
          0);
  auto meta = header_line(d / "c" / "metrics.csv").first;
  CHECK(meta.find("\"selection\":\"decomposition\"") != std::string::npos);
  CHECK(meta.find("\"rho\":0.05") != std::string::npos);
}

TEST_CASE("evolve: IGD-down needs a baseline")
{
  auto d = scratch("evobad");
  CHECK(run_cli("evolve --instance EMOP2 --runs 1 --budget 910 --igd-down", d) == 2);
  CHECK(run_cli("evolve --instance EMOP2 --select magic", d) == 2);
  REQUIRE(run_cli("evolve --instance EMOP2 --runs 2 --budget 910 --resolution 20 --igd-down --build-baseline --out ok", d) ==
          0);
  auto t = io::read_csv((d / "ok" / "metrics.csv").string());
  REQUIRE(t.cells.size() == 4);
  CHECK(t.cells[1][3] == "igd_down");
  CHECK(!summary(d / "ok" / "metrics.csv", "igd_down_mean").empty());
}

TEST_CASE("worker count comes from the environment by default")
{
  auto d = scratch("env");
  REQUIRE(run_cli("volume --deltas 0,0.1 --out a.csv", d) == 0);
  CHECK(header_line(d / "a.csv").first.find("\"workers\":1") != std::string::npos);
  std::string cmd = "cd '" + d.string() + "' && WPB_WORKERS=3 " + WPB_CLI_PATH + " volume --deltas 0,0.1 --out b.csv";
  REQUIRE(std::system(cmd.c_str()) == 0);
  CHECK(header_line(d / "b.csv").first.find("\"workers\":3") != std::string::npos);
}

TEST_CASE("metrics on an evolve output")
{
  auto d = scratch("met");
  REQUIRE(run_cli("evolve --instance EMOP2 --runs 2 --budget 910 --resolution 20 --out e", d) == 0);
  REQUIRE(run_cli("metrics --input e/run_0.csv e/run_1.csv --reference 2,2,2 --instance EMOP2 --out m.csv", d) == 0);
  CHECK(header_line(d / "m.csv").second == "instance,algorithm,seed,metric_name,value");
  auto m = io::read_csv((d / "m.csv").string());
  auto e = io::read_csv((d / "e" / "metrics.csv").string());
  REQUIRE(m.cells.size() == 4);
  CHECK(m.cells[0][3] == "hypervolume");
  CHECK(m.cells[0][1] == "pareto_crowding");
  CHECK(m.cells[2][2] == "2");
  CHECK(m.rows[1][4] == Approx(e.rows[0][4]).epsilon(1e-12));
  CHECK(m.rows[3][4] == Approx(e.rows[1][4]).epsilon(1e-12));
  CHECK(run_cli("metrics --input e/run_0.csv", d) == 2);
  CHECK(run_cli("metrics --input e/run_0.csv --reference 2,2", d) == 2);
}
