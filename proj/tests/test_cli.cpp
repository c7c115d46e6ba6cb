#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cli.hpp"

using nlohmann::json;

namespace {

const std::filesystem::path data_dir = FLOERKIT_DATA_DIR;

struct Run {
  int code;
  std::string out;
  std::string err;
  json parsed() const { return json::parse(out); }
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  for (auto& a : args)
    if (a.rfind("data/", 0) == 0) a = (data_dir / a.substr(5)).string();
  const int code = floerkit::cli::dispatch(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("usage errors exit with 2") {
  auto r = run({});
  CHECK(r.code == 2);
  CHECK(r.err.find("Subcommands:") != std::string::npos);
  CHECK(run({"no-such-command"}).code == 2);
  CHECK(run({"repvar", "--group", "S3"}).code == 2);
  CHECK(run({"invariant", "--group", "S3"}).code == 2);
  CHECK(run({"invariant", "--group", "S3", "--chain", "data/missing.json"}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("closed invariants and the oracle") {
  auto r = run({"invariant", "--chain", "data/chains/s3_heegaard.json", "--group", "data/groups/z2.json"});
  CHECK(r.code == 0);
  CHECK(r.parsed()["count"] == 1);
  r = run({"invariant", "--chain", "data/chains/s1xs2.json", "--group", "S3"});
  CHECK(r.parsed()["count"] == 3);
  r = run({"invariant", "--chain", "data/chains/lens_2_1.json", "--group", "data/groups/s3.json"});
  CHECK(r.parsed()["count"] == 2);
  r = run({"oracle", "--presentation", "data/presentations/cyclic2.json", "--group", "S3"});
  CHECK(r.parsed()["count"] == 2);
  r = run({"oracle", "--presentation", "data/presentations/free2.json", "--group", "S3"});
  CHECK(r.parsed()["count"] == 11);
  r = run({"verify-cerf", "--group", "data/groups/s3.json", "--genus", "1"});
  CHECK(r.code == 0);
  for (const auto& c : r.parsed()) CHECK(c["status"] == "pass");
}

TEST_CASE("varieties and relations") {
  auto r = run({"repvar", "--group", "S3", "--genus", "1"});
  CHECK(r.code == 0);
  CHECK(r.parsed()["size"] == 8);
  CHECK(run({"repvar", "--group", "S3", "--empty"}).parsed()["size"] == 1);
  r = run({"repvar", "--group", "S4", "--genus", "2", "--budget", "1000"});
  CHECK(r.code == 1);
  CHECK(r.parsed()["error"] == "ResourceLimit");
  r = run({"lagrangian", "--group", "S3", "--kind", "attach2", "--genus", "1"});
  CHECK(r.parsed()["relation"]["target"]["size"] == 1);
  r = run({"embedded", "data/relations/fold.json", "data/relations/unfold.json"});
  CHECK(r.code == 1);
  CHECK(r.parsed()["witness"]["y_other"] == 1);
  r = run({"compose", "data/relations/s3_attach2_g1_transpose.json", "data/relations/s3_cyl_s_g1.json"});
  CHECK(r.code == 0);
  CHECK(r.parsed()["embedded"] == true);
  r = run({"generators", "--cyclic", "data/relations/s3_attach2_g1.json", "data/relations/s3_attach2_g1_transpose.json"});
  CHECK(r.parsed()["count"] == 3);
  CHECK(run({"generators", "data/relations/s3_cyl_s_g1.json"}).code == 2);
}

TEST_CASE("bordism subcommands") {
  auto r = run({"bordism-validate", "--chain", "data/chains/lens_3_1.json"});
  CHECK(r.code == 0);
  CHECK(r.parsed()["source"] == "empty");
  r = run({"bordism-neighbors", "--chain", "data/chains/genus1_cylinders.json"});
  CHECK(!r.parsed().empty());
  r = run({"bordism-connect", "--chain", "data/chains/genus1_cylinders.json", "--to",
           "data/chains/genus1_cylinder_merged.json", "--depth", "2"});
  CHECK(r.code == 0);
  CHECK(r.parsed()["moves"] == json{"CylMerge@0"});
  r = run({"bordism-connect", "--chain", "data/chains/s3_heegaard.json", "--to", "data/chains/s1xs2.json", "--depth",
           "1"});
  CHECK(r.code == 1);
  CHECK(r.parsed()["connected"] == false);
}

TEST_CASE("quilt subcommands") {
  auto r = run({"quilt-validate", "--diagram", "data/quilts/horizontal.json"});
  CHECK(r.code == 0);
  CHECK(r.parsed()["patches"] == 3);
  r = run({"quilt-glue", "--diagram", "data/quilts/cap_l.json", "--into", "data/quilts/cup_l.json", "--end", "1"});
  CHECK(r.code == 0);
  CHECK(r.parsed()["ends"].size() == 2);
  r = run({"quilt-glue", "--diagram", "data/quilts/cap_l.json", "--into", "data/quilts/cylinder_s.json", "--end", "0"});
  CHECK(r.code == 1);
  CHECK(r.parsed()["error"] == "CyclicMismatch");
  r = run({"quilt-shrink", "--diagram", "data/quilts/fold_cylinder.json", "--patch", "0"});
  CHECK(r.code == 1);
  CHECK(r.parsed()["error"] == "NotEmbedded");
  r = run({"quilt-shrink", "--diagram", "data/quilts/fold_cylinder.json", "--patch", "0", "--unchecked"});
  CHECK(r.code == 0);
  r = run({"quilt-eval", "--diagram", "data/quilts/cylinder_s.json", "--inputs", "data/quilts/cylinder_s_input.json"});
  CHECK(r.parsed()["outputs"] == json{{4}});
  r = run({"quilt-eval", "--diagram", "data/quilts/cap_l.json"});
  CHECK(r.parsed()["count"] == 3);
  r = run({"quilt-eval", "--diagram", "data/quilts/generic_cylinder.json"});
  CHECK(r.code == 1);
  r = run({"quilt-export-dot", "--diagram", "data/quilts/concentric.json"});
  CHECK(r.out.rfind("digraph quilt {", 0) == 0);
}

TEST_CASE("category subcommands") {
  auto r = run({"cat-validate", "--category", "data/categories/arrow.json"});
  CHECK(r.code == 0);
  r = run({"cat-validate", "--bicategory", "data/categories/conjugacy3_witness.json"});
  CHECK(r.code == 1);
  CHECK(r.parsed()["valid"] == false);
  r = run({"cat-yoneda", "--bicategory", "data/categories/relations_m.json"});
  CHECK(r.code == 0);
  CHECK(r.parsed()["valid"] == true);
  r = run({"cat-quotient", "--bicategory", "data/categories/arrow_bicategory.json"});
  CHECK(r.code == 0);
  const auto arrow = json::parse(std::ifstream(data_dir / "categories/arrow.json"));
  CHECK(r.parsed()["category"]["composition"] == arrow["composition"]);
  r = run({"cat-quotient", "--bicategory", "data/categories/conjugacy3_witness.json"});
  CHECK(r.code == 1);
  CHECK(r.parsed()["error"] == "IllFormedQuotient");
  CHECK(r.parsed()["witness"]["f_other"] == "(0,0,2)");
}

TEST_CASE("worker count does not change output") {
  const std::vector<std::vector<std::string>> commands = {
      {"repvar", "--group", "S3", "--genus", "2"},
      {"verify-cerf", "--group", "Q8", "--genus", "1"},
      {"quilt-eval", "--diagram", "data/quilts/cap_l.json"},
      {"invariant", "--chain", "data/chains/connected_sum.json", "--group", "S3"},
  };
  for (const auto& c : commands) {
    auto one = c, four = c;
    one.insert(one.begin(), {"--threads", "1"});
    four.insert(four.begin(), {"--threads", "4"});
    CHECK(run(one).out == run(four).out);
  }
}
