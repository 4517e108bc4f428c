#include <catch_amalgamated.hpp>

#include <array>
#include <cstdio>
#include <fstream>
#include <sys/wait.h>

#include "support.hpp"

using namespace morext;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

/// Runs the CLI with stderr discarded.
Run run_cli(const std::string& args, const std::string& env = "") {
  std::string cmd = env + " " + MOREXT_CLI + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe);
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string data(const std::string& file) { return std::string(MOREXT_DATA_DIR) + "/" + file; }

std::string write_temp(const std::string& name, const std::string& text) {
  auto path = std::string(MOREXT_TMP_DIR) + "/" + name;
  std::ofstream(path) << text;
  return path;
}

}  // namespace

TEST_CASE("extension documents round trip", "[serialize]") {
  for (const auto& e : catalog()) {
    auto text = extension_json(e.extension).dump();
    auto back = parse_extension(text);
    INFO(e.name);
    CHECK(extension_json(back).dump() == text);
    std::visit(
        [&](const auto& orig) {
          using P = std::decay_t<decltype(orig)>;
          const auto& parsed = std::get<P>(back);
          CHECK(parsed->algebra() == orig->algebra());
          CHECK(parsed->b().dim() == orig->b().dim());
          CHECK(parsed->name() == orig->name());
        },
        e.extension);
  }
}

TEST_CASE("random extensions round trip", "[serialize][property]") {
  std::mt19937_64 rng(12);
  for (int i = 0; i < 20; ++i) {
    auto ext = testing::random_extension(rng);
    auto text = extension_json(*ext).dump();
    auto back = std::get<ExtensionPtr<PrimeField>>(parse_extension(text));
    CHECK(back->algebra() == ext->algebra());
    CHECK(extension_json(*back).dump() == text);
  }
}

TEST_CASE("malformed documents are rejected", "[serialize]") {
  auto good = extension_json(catalog_entry("trunc-p2").extension);
  CHECK_THROWS_AS(parse_extension("{"), ParseError);
  CHECK_THROWS_AS(parse_extension("[]"), ParseError);

  auto bad_prime = good;
  bad_prime["field"]["p"] = 4;
  CHECK_THROWS_AS(parse_extension(bad_prime.dump()), ParseError);

  auto bad_index = good;
  bad_index["algebra"]["mul"][0][2] = 9;
  try {
    parse_extension(bad_index.dump());
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.where() == "algebra.mul[0][2]");
  }

  auto bad_coeff = good;
  bad_coeff["algebra"]["unit"][0] = 1;
  CHECK_THROWS_AS(parse_extension(bad_coeff.dump()), ParseError);

  auto missing = good;
  missing.erase("subalgebra");
  CHECK_THROWS_AS(parse_extension(missing.dump()), ParseError);

  // Well-formed but not an algebra: drop a product so associativity or the unit fails.
  auto broken = good;
  broken["algebra"]["mul"].erase(broken["algebra"]["mul"].size() - 1);
  broken["algebra"]["mul"].erase(std::size_t{1});
  CHECK_THROWS_AS(parse_extension(broken.dump()), ValidationError);

  // Span that is not a subalgebra.
  auto not_sub = good;
  not_sub["subalgebra"]["basis"] = Json::array({Json::array({"0", "1", "0", "0"})});
  CHECK_THROWS_AS(parse_extension(not_sub.dump()), ValidationError);
}

TEST_CASE("idempotent documents", "[serialize]") {
  auto entry = catalog_entry("m2diag");
  auto ext = std::get<ExtensionPtr<PrimeField>>(entry.extension);
  const auto& spec = std::get<IdempotentSpec<PrimeField>>(entry.idempotent);
  auto text = idempotent_json(ext->field(), spec).dump();
  auto back = parse_idempotent(*ext, text);
  CHECK(back.k == spec.k);
  CHECK(idempotent_json(ext->field(), back).dump() == text);
  CHECK_THROWS_AS(parse_idempotent(*ext, R"({"k": 2, "entries": [[["1","0"]]]})"), ParseError);
  CHECK_THROWS_AS(parse_idempotent(*ext, R"({"k": 0, "entries": []})"), ParseError);
}

TEST_CASE("shipped data files match the catalog", "[cli]") {
  for (const auto& e : catalog()) {
    std::ifstream in(data(e.name + ".json"));
    REQUIRE(in);
    std::stringstream ss;
    ss << in.rdbuf();
    INFO(e.name);
    CHECK(extension_json(parse_extension(ss.str())).dump() == extension_json(e.extension).dump());
  }
}

TEST_CASE("cli catalog", "[cli]") {
  auto r = run_cli("catalog");
  CHECK(r.code == 0);
  for (const auto& e : catalog()) CHECK(r.out.find(e.name) != std::string::npos);
  auto emit = run_cli("catalog trunc-p2 --emit");
  CHECK(emit.code == 0);
  CHECK(extension_json(parse_extension(emit.out)).dump() == extension_json(catalog_entry("trunc-p2").extension).dump());
  CHECK(run_cli("catalog no-such-entry").code == 2);
}

TEST_CASE("cli classify", "[cli]") {
  auto r = run_cli("classify " + data("m2diag.json") + " --json");
  REQUIRE(r.code == 0);
  auto j = Json::parse(r.out);
  CHECK(j["classes"]["separable"]["outcome"] == "holds");
  CHECK(j["classes"]["separable"]["verified"] == true);
  CHECK(j["classes"]["liberal"]["outcome"] == "fails");
  for (const auto& [rule, ok] : j["implications"].items()) CHECK(ok == true);

  auto text = run_cli("classify catalog:trunc-p2");
  CHECK(text.code == 0);
  CHECK(text.out.find("liberal                 holds") != std::string::npos);

  // Determinism, and the seed override is accepted.
  CHECK(run_cli("classify catalog:c2-f2 --json").out == run_cli("classify catalog:c2-f2 --json").out);
  CHECK(run_cli("classify catalog:c2-f2", "MOREXT_SEED=7").code == 0);
  CHECK(run_cli("classify catalog:c2-f2", "MOREXT_SEED=x").code == 2);

  auto subset = Json::parse(run_cli("classify catalog:trunc-p2 --classes separable,liberal --json").out);
  CHECK(subset["classes"].size() == 2);
  CHECK(run_cli("classify catalog:trunc-p2 --classes nonsense").code == 2);
}

TEST_CASE("cli errors", "[cli]") {
  CHECK(run_cli("classify /nonexistent.json").code == 2);
  CHECK(run_cli("classify " + write_temp("broken.json", "{\"field\": 3")).code == 2);
  CHECK(run_cli("classify " + write_temp("badp.json", R"({"field":{"kind":"prime","p":6}})")).code == 2);
  CHECK(run_cli("frobnicate").code == 2);
  CHECK(run_cli("transport catalog:m2diag").code == 2);
  CHECK(run_cli("transport catalog:m2diag --free 2 --idempotent x.json").code == 2);
  CHECK(run_cli("demo counterexample --p 4").code == 2);
}

TEST_CASE("cli transport", "[cli]") {
  auto r = run_cli("transport " + data("trunc-p2.json") + " --free 2 --verify-invariance --json");
  REQUIRE(r.code == 0);
  auto j = Json::parse(r.out);
  CHECK(j["target_dimensions"]["A"] == 16);
  CHECK(j["classes"]["liberal"]["verified"] == true);
  for (const auto& [name, check] : j["invariance_checks"].items()) {
    INFO(name);
    CHECK(check["ok"] == true);
  }
  auto idem = run_cli("transport " + data("m2diag.json") + " --idempotent " + data("m2diag.idempotent.json") +
                      " --verify-invariance");
  CHECK(idem.code == 0);
  CHECK(idem.out.find("invariance ok") != std::string::npos);
}

TEST_CASE("cli counterexample demo", "[cli]") {
  for (const auto* p : {"2", "3"}) {
    auto r = run_cli(std::string("demo counterexample --p ") + p);
    CHECK(r.code == 0);
    CHECK(r.out.find("not Morita invariant") != std::string::npos);
  }
}
