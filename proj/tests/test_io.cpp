#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "linkage/cache_io.hpp"
#include "linkage/svg_plot.hpp"
#include "linkage/verify.hpp"

using namespace linkage;
using json = nlohmann::ordered_json;

namespace {

#ifndef LINKAGE_BIN_PATH
#define LINKAGE_BIN_PATH ""
#endif
#ifndef SCHEMA_PATH
#define SCHEMA_PATH ""
#endif

// Minimal JSON-schema subset checker: type, required, properties, items,
// enum, $ref into $defs. Enough to validate every document the CLI emits.
struct SchemaChecker {
  json schema;
  bool check(const json& doc, const std::string& def) const {
    return check_node(doc, schema["$defs"][def]);
  }
  bool check_node(const json& doc, const json& node) const {
    if (node.contains("$ref")) {
      std::string ref = node["$ref"].get<std::string>();
      auto pos = ref.rfind('/');
      return check_node(doc, schema["$defs"][ref.substr(pos + 1)]);
    }
    if (node.contains("enum")) {
      for (auto& v : node["enum"])
        if (v == doc) return true;
      return false;
    }
    if (node.contains("type")) {
      std::string t = node["type"].get<std::string>();
      if (t == "object" && !doc.is_object()) return false;
      if (t == "array" && !doc.is_array()) return false;
      if (t == "string" && !doc.is_string()) return false;
      if (t == "integer" && !doc.is_number_integer()) return false;
      if (t == "boolean" && !doc.is_boolean()) return false;
    }
    if (node.contains("required"))
      for (auto& k : node["required"])
        if (!doc.contains(k.get<std::string>())) return false;
    if (node.contains("properties") && doc.is_object()) {
      for (auto& [k, sub] : node["properties"].items())
        if (doc.contains(k) && !check_node(doc[k], sub)) return false;
    }
    if (node.contains("items") && doc.is_array()) {
      for (auto& item : doc)
        if (!check_node(item, node["items"])) return false;
    }
    return true;
  }
};

SchemaChecker load_schema() {
  SchemaChecker sc;
  std::ifstream f(SCHEMA_PATH);
  REQUIRE(f.good());
  f >> sc.schema;
  return sc;
}

struct RunResult {
  int code;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  std::string bin = LINKAGE_BIN_PATH;
  REQUIRE(!bin.empty());
  std::string tmp = std::string("/tmp/linkage_cli_out_") + std::to_string(::getpid()) + ".txt";
  std::string cmd = bin + " " + args + " > " + tmp + " 2>/dev/null";
  int status = std::system(cmd.c_str());
  RunResult r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream f(tmp);
  std::stringstream ss;
  ss << f.rdbuf();
  r.out = ss.str();
  std::remove(tmp.c_str());
  return r;
}

}  // namespace

TEST_CASE("cache round trip is bit exact") {
  Engine e = Engine::make("A1");
  for (auto& [g, a] : e.weyl->dominant_alcoves_up_to(5)) {
    (void)a;
    e.hecke->canonical_N(g);
  }
  std::string text = serialize_cache(e.type, e.hecke->export_cache());
  CacheFile parsed = parse_cache(text);
  CHECK(parsed.ctx == "A1");
  CHECK(serialize_cache(parsed.ctx, parsed.records) == text);

  // a warm engine answers identically to a cold one
  Engine warm = Engine::make("A1");
  warm.hecke->import_cache(parsed.records);
  Engine cold = Engine::make("A1");
  for (auto& [g, a] : cold.weyl->dominant_alcoves_up_to(5)) {
    (void)a;
    CHECK(*warm.hecke->canonical_N(g) == *cold.hecke->canonical_N(g));
  }
}

TEST_CASE("cache rejects corrupt input") {
  CHECK_THROWS_AS(parse_cache(""), CacheFormatError);
  CHECK_THROWS_AS(parse_cache("{\"format\":\"other\"}\n"), CacheFormatError);
  CHECK_THROWS_AS(parse_cache("{\"format\":\"klcache\",\"version\":9}\n"), CacheFormatError);
  Engine e = Engine::make("A1");
  e.hecke->canonical_N(e.weyl->identity());
  std::string good = serialize_cache(e.type, e.hecke->export_cache());
  std::string truncated = good.substr(0, good.size() - 4);
  CHECK_THROWS_AS(parse_cache(truncated), CacheFormatError);
  std::string mangled = good;
  mangled.insert(good.find('\n') + 1, "{\"ctx\":\"A1\",\"basis\":\"Q\",\"y\":[],\"entries\":[]}\n");
  CHECK_THROWS_AS(parse_cache(mangled), CacheFormatError);
}

TEST_CASE("fundamental facet enumeration") {
  Engine a1 = Engine::make("A1");
  CHECK(fundamental_facets(*a1.weyl).size() == 3);  // interior and two vertices
  Engine a2 = Engine::make("A2");
  CHECK(fundamental_facets(*a2.weyl).size() == 7);  // 1 + 3 walls + 3 vertices
  Engine prod = Engine::make("A1xA1");
  CHECK(fundamental_facets(*prod.weyl).size() == 9);
}

TEST_CASE("verify suites pass on small regions") {
  Engine a2 = Engine::make("A2");
  VerifyOptions opt;
  opt.radius = 4;
  opt.ell = 2;
  opt.count = 3;
  for (const std::string& s : verify_suite_names()) {
    json doc = run_verify_suite(s, a2, opt);
    INFO(s, ": ", doc.dump());
    CHECK(doc["pass"].get<bool>());
    CHECK(doc["count"].get<int>() > 0);
  }
  CHECK_THROWS_AS(run_verify_suite("nope", a2, opt), std::invalid_argument);

  // deterministic report bytes for a fixed request, cold vs warm
  Engine fresh = Engine::make("A2");
  json again = run_verify_suite("hat", fresh, opt);
  json warm = run_verify_suite("hat", fresh, opt);
  CHECK(run_verify_suite("hat", a2, opt).dump() == again.dump());
  CHECK(again.dump() == warm.dump());
}

TEST_CASE("svg rendering") {
  Engine c2 = Engine::make("C2");
  PlotOptions opt;
  opt.ell = 2;
  std::string svg = render_svg(c2, opt);
  CHECK(svg.find("<svg") != std::string::npos);
  CHECK(svg.find("</svg>") != std::string::npos);
  CHECK(svg == render_svg(c2, opt));  // byte determinism

  PlotOptions with_chain = opt;
  with_chain.chain = {Coweight{0, 0}, Coweight{2, 2}};
  Engine c2b = Engine::make("C2");
  std::string svg2 = render_svg(c2b, with_chain);
  CHECK(svg2.find("polygon") != std::string::npos);

  Engine a1 = Engine::make("A1");
  CHECK_THROWS_AS(render_svg(a1, opt), std::invalid_argument);
}

TEST_CASE("cli contract") {
  SchemaChecker schema = load_schema();

  auto block = run_cli("block A1 --ell 3 --lambda 0 --radius 20");
  CHECK(block.code == 0);
  json bdoc = json::parse(block.out);
  CHECK(schema.check(bdoc, "block"));
  CHECK(bdoc["block"] == json::parse("[[0],[4],[6],[10],[12],[16],[18]]"));

  auto quantum = run_cli("block A1 --ell 3 --lambda 2 --mode quantum");
  CHECK(quantum.code == 0);
  json qdoc = json::parse(quantum.out);
  CHECK(qdoc["block"] == json::parse("[[2]]"));

  auto prod = run_cli("block A1xA1 --ell 3 --lambda 0,2 --radius 20");
  CHECK(prod.code == 0);
  json pdoc = json::parse(prod.out);
  // product of the two A1 answers
  CHECK(pdoc["block"].size() == 7 * 3);

  auto chain = run_cli("chain A1 --ell 3 --from 0 --to 6");
  CHECK(chain.code == 0);
  json cdoc = json::parse(chain.out);
  CHECK(schema.check(cdoc, "chain"));
  CHECK(cdoc["certified"].get<bool>());
  CHECK(cdoc["length"].get<int>() <= cdoc["bound"].get<int>());
  CHECK(cdoc["bound"].get<int>() == 4);

  auto askl = run_cli("askl A1 --x \"\" --y 1");
  CHECK(askl.code == 0);
  CHECK(schema.check(json::parse(askl.out), "polydoc"));
  CHECK(json::parse(askl.out)["value_at_one"] == 1);

  auto verify = run_cli("verify hat A1 --radius 6");
  CHECK(verify.code == 0);
  CHECK(schema.check(json::parse(verify.out), "verify"));

  SUBCASE("exit codes") {
    CHECK(run_cli("block").code == 2);                                        // usage
    CHECK(run_cli("block A1 --ell 3 --lambda 0,0").code == 2);                // wrong rank
    CHECK(run_cli("block Z9 --ell 3 --lambda 0").code == 2);                  // bad type
    CHECK(run_cli("block A1 --ell 2 --lambda 0 --mode quantum").code == 3);   // even ell
    CHECK(run_cli("chain A1 --ell 3 --from 0 --to 1").code == 4);             // cross block
    CHECK(run_cli("verify nosuch A1").code == 2);                             // unknown suite
    CHECK(run_cli("plot E6").code == 2);                                      // not rank 2
  }

  SUBCASE("determinism across runs") {
    auto a = run_cli("block C2 --ell 2 --lambda 1,0 --radius 10");
    auto b = run_cli("block C2 --ell 2 --lambda 1,0 --radius 10");
    CHECK(a.out == b.out);
    auto p1 = run_cli("plot C2 --ell 2 --chain 0,0:2,2");
    auto p2 = run_cli("plot C2 --ell 2 --chain 0,0:2,2");
    CHECK(p1.code == 0);
    CHECK(p1.out == p2.out);
  }

  SUBCASE("cache lifecycle through the cli") {
    std::string file = "/tmp/linkage_test_cache.jsonl";
    std::remove(file.c_str());
    auto exp = run_cli("cache export --file " + file + " --type A1 --radius 6");
    CHECK(exp.code == 0);
    CHECK(schema.check(json::parse(exp.out), "cachestatus"));
    auto val = run_cli("cache validate --file " + file);
    CHECK(val.code == 0);
    auto imp = run_cli("cache import --file " + file);
    CHECK(imp.code == 0);

    // warm run equals cold run through the --cache binding
    auto cold = run_cli("askl A1 --x 1 --y 1,0,1");
    auto warmed = run_cli("askl A1 --x 1 --y 1,0,1 --cache " + file);
    CHECK(cold.out == warmed.out);

    // truncation is rejected atomically with the cache exit code
    std::ifstream in(file);
    std::stringstream ss;
    ss << in.rdbuf();
    in.close();
    std::string text = ss.str();
    std::ofstream out(file, std::ios::trunc | std::ios::binary);
    out << text.substr(0, text.size() / 2);
    out.close();
    CHECK(run_cli("cache validate --file " + file).code == 5);
    CHECK(run_cli("askl A1 --x 1 --y 1,0,1 --cache " + file).code == 5);
    std::remove(file.c_str());
  }
}
