// Command-line front door for the block-combinatorics library: block and
// chain queries, polynomial lookups, property verification, rank-2 SVG
// plots, and polynomial-cache management.
//
// Exit codes are stable API: 0 ok, 2 usage, 3 theory constraint,
// 4 different blocks, 5 cache.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "linkage/cache_io.hpp"
#include "linkage/svg_plot.hpp"
#include "linkage/verify.hpp"

using json = nlohmann::ordered_json;
using namespace linkage;

namespace {

Coweight parse_weight(const std::string& s, int rank) {
  Coweight out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    size_t pos = 0;
    long long v = std::stoll(item, &pos);
    if (pos != item.size()) throw std::invalid_argument("bad weight entry '" + item + "'");
    out.push_back(v);
  }
  if (static_cast<int>(out.size()) != rank)
    throw std::invalid_argument("weight has " + std::to_string(out.size()) + " entries, expected " +
                                std::to_string(rank));
  return out;
}

std::vector<int> parse_word(const std::string& s, int num_gens) {
  std::vector<int> out;
  if (s.empty() || s == "e") return out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    size_t pos = 0;
    int v = std::stoi(item, &pos);
    if (pos != item.size() || v < 0 || v >= num_gens)
      throw std::invalid_argument("bad generator index '" + item + "'");
    out.push_back(v);
  }
  return out;
}

json weight_json(const Coweight& w) { return json(w); }

json poly_json(const Laurent& p) {
  json arr = json::array();
  for (auto& [e, c] : p.terms()) arr.push_back(json::array({e, c}));
  return arr;
}

void emit(const std::string& text, const std::string& output) {
  if (output.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(output, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open output file " + output);
    f << text;
  }
}

void emit_json(const json& doc, const std::string& output) { emit(doc.dump(2) + "\n", output); }

struct CacheBinding {
  std::string path;
  Engine* engine = nullptr;
  void load() const {
    if (path.empty()) return;
    std::ifstream probe(path);
    if (!probe.good()) return;  // cold cache
    probe.close();
    CacheFile file = read_cache_file(path);
    if (file.ctx != engine->type)
      throw CacheFormatError("cache context " + file.ctx + " does not match type " + engine->type);
    engine->hecke->import_cache(file.records);
  }
  void save() const {
    if (path.empty()) return;
    write_cache_file(path, engine->type, engine->hecke->export_cache());
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact affine Weyl combinatorics: blocks, chains, polynomials"};
  app.require_subcommand(1);

  std::string type, lambda_str, lambda2_str, xword, yword, output, suite, cache_path, file_path;
  long long ell = 2;
  int radius = 20;
  int count = 10;
  int jobs = 1;
  int window = 4;
  std::string mode = "modular";
  bool force_unsupported = false;
  std::string chain_spec;
  if (const char* env = std::getenv("LINKAGE_CACHE")) cache_path = env;

  auto add_cache_opt = [&](CLI::App* cmd) { cmd->add_option("--cache", cache_path, "cache file path"); };

  auto* cmd_block = app.add_subcommand("block", "block of a dominant weight");
  cmd_block->add_option("type", type)->required();
  cmd_block->add_option("--ell,-l", ell)->required();
  cmd_block->add_option("--lambda", lambda_str)->required();
  cmd_block->add_option("--radius", radius);
  cmd_block->add_option("--mode", mode)->check(CLI::IsMember({"modular", "quantum"}));
  cmd_block->add_flag("--force-unsupported", force_unsupported,
                      "skip the quantum admissibility check (no theoretical backing)");
  cmd_block->add_option("--output,-o", output);
  add_cache_opt(cmd_block);

  auto* cmd_chain = app.add_subcommand("chain", "linking chain between two weights of one block");
  cmd_chain->add_option("type", type)->required();
  cmd_chain->add_option("--ell,-l", ell)->required();
  cmd_chain->add_option("--from", lambda_str)->required();
  cmd_chain->add_option("--to", lambda2_str)->required();
  cmd_chain->add_option("--mode", mode)->check(CLI::IsMember({"modular", "quantum"}));
  cmd_chain->add_flag("--force-unsupported", force_unsupported);
  cmd_chain->add_option("--output,-o", output);
  add_cache_opt(cmd_chain);

  auto* cmd_askl = app.add_subcommand("askl", "antispherical canonical-basis polynomial n_{x,y}");
  cmd_askl->add_option("type", type)->required();
  cmd_askl->add_option("--x", xword)->required();
  cmd_askl->add_option("--y", yword)->required();
  cmd_askl->add_option("--output,-o", output);
  add_cache_opt(cmd_askl);

  auto* cmd_kl = app.add_subcommand("kl", "Hecke canonical-basis polynomial h_{x,y}");
  cmd_kl->add_option("type", type)->required();
  cmd_kl->add_option("--x", xword)->required();
  cmd_kl->add_option("--y", yword)->required();
  cmd_kl->add_option("--output,-o", output);
  add_cache_opt(cmd_kl);

  auto* cmd_periodic = app.add_subcommand("periodic", "periodic polynomial p_{B,A} for alcoves B, A");
  cmd_periodic->add_option("type", type)->required();
  cmd_periodic->add_option("--b", xword, "word of the element with B = w(a_1)")->required();
  cmd_periodic->add_option("--a", yword, "word of the element with A = w(a_1)")->required();
  cmd_periodic->add_option("--output,-o", output);
  add_cache_opt(cmd_periodic);

  auto* cmd_verify = app.add_subcommand("verify", "run a property suite");
  cmd_verify->add_option("suite", suite)->required();
  cmd_verify->add_option("type", type)->required();
  cmd_verify->add_option("--ell,-l", ell);
  cmd_verify->add_option("--radius", radius);
  cmd_verify->add_option("--count", count);
  cmd_verify->add_option("--jobs", jobs);
  cmd_verify->add_option("--output,-o", output);
  add_cache_opt(cmd_verify);

  auto* cmd_plot = app.add_subcommand("plot", "rank-2 hyperplane arrangement SVG");
  cmd_plot->add_option("type", type)->required();
  cmd_plot->add_option("--ell,-l", ell);
  cmd_plot->add_option("--window", window);
  cmd_plot->add_option("--chain", chain_spec, "two weights 'a,b:c,d' to shade a linking chain");
  cmd_plot->add_option("--output,-o", output);

  auto* cmd_cache = app.add_subcommand("cache", "polynomial cache management");
  std::string cache_op;
  cmd_cache->add_option("op", cache_op)->required()->check(CLI::IsMember({"export", "import", "validate"}));
  cmd_cache->add_option("--file", file_path)->required();
  cmd_cache->add_option("--type", type);
  cmd_cache->add_option("--radius", radius);
  cmd_cache->add_option("--output,-o", output);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 2;
  }

  try {
    if (cmd_block->parsed()) {
      Engine e = Engine::make(type);
      CacheBinding cache{cache_path, &e};
      cache.load();
      Coweight lam = parse_weight(lambda_str, e.weyl->rs().rank());
      bool quantum = mode == "quantum";
      if (quantum && !force_unsupported) Blocks::check_quantum_constraints(e.weyl->rs(), ell);
      BlockResult res = e.blocks->block_of(lam, ell, quantum && !force_unsupported, radius);
      json doc;
      doc["type"] = e.type;
      doc["ell"] = ell;
      doc["mode"] = mode;
      doc["lambda"] = weight_json(lam);
      doc["r"] = json(res.r_values);
      json blockw = json::array();
      for (auto& mu : res.weights) blockw.push_back(weight_json(mu));
      doc["block"] = blockw;
      doc["region"] = radius;
      doc["certified"] = res.contains_lambda;
      emit_json(doc, output);
      cache.save();
    } else if (cmd_chain->parsed()) {
      Engine e = Engine::make(type);
      CacheBinding cache{cache_path, &e};
      cache.load();
      Coweight lam = parse_weight(lambda_str, e.weyl->rs().rank());
      Coweight lam2 = parse_weight(lambda2_str, e.weyl->rs().rank());
      bool quantum = mode == "quantum";
      ChainResult res = e.blocks->chain_between(lam, lam2, ell, quantum);
      json doc;
      doc["type"] = e.type;
      doc["ell"] = ell;
      doc["mode"] = mode;
      doc["lambda"] = weight_json(lam);
      doc["lambda2"] = weight_json(lam2);
      json chainw = json::array();
      for (auto& mu : res.weights) chainw.push_back(weight_json(mu));
      doc["chain"] = chainw;
      json wits = json::array();
      for (auto& mu : res.witnesses) wits.push_back(weight_json(mu));
      doc["witnesses"] = wits;
      json vals = json::array();
      for (auto& [v1, v2] : res.values) vals.push_back(json::array({v1, v2}));
      doc["values"] = vals;
      doc["bound"] = res.bound;
      doc["length"] = res.weights.size() - 1;
      doc["certified"] = res.certified;
      emit_json(doc, output);
      cache.save();
    } else if (cmd_askl->parsed() || cmd_kl->parsed()) {
      Engine e = Engine::make(type);
      CacheBinding cache{cache_path, &e};
      cache.load();
      AffineElt x = e.weyl->product_of_word(parse_word(xword, e.weyl->num_generators()));
      AffineElt y = e.weyl->product_of_word(parse_word(yword, e.weyl->num_generators()));
      bool asph = cmd_askl->parsed();
      Laurent p = asph ? e.hecke->n_poly(x, y) : e.hecke->h_poly(x, y);
      json doc;
      doc["type"] = e.type;
      doc["basis"] = asph ? "N" : "H";
      doc["x"] = json(e.weyl->reduced_word(x));
      doc["y"] = json(e.weyl->reduced_word(y));
      doc["poly"] = poly_json(p);
      doc["value_at_one"] = p.eval_one();
      emit_json(doc, output);
      cache.save();
    } else if (cmd_periodic->parsed()) {
      Engine e = Engine::make(type);
      CacheBinding cache{cache_path, &e};
      cache.load();
      Alcove b = e.weyl->alcove_of(e.weyl->product_of_word(parse_word(xword, e.weyl->num_generators())));
      Alcove a = e.weyl->alcove_of(e.weyl->product_of_word(parse_word(yword, e.weyl->num_generators())));
      Laurent p = e.periodic->p_poly(b, a);
      json doc;
      doc["type"] = e.type;
      doc["basis"] = "P";
      doc["b"] = json(b.n);
      doc["a"] = json(a.n);
      doc["poly"] = poly_json(p);
      doc["value_at_one"] = p.eval_one();
      emit_json(doc, output);
      cache.save();
    } else if (cmd_verify->parsed()) {
      auto names = verify_suite_names();
      if (std::find(names.begin(), names.end(), suite) == names.end()) {
        std::cerr << "unknown suite '" << suite << "'\n";
        return 2;
      }
      Engine e = Engine::make(type);
      CacheBinding cache{cache_path, &e};
      cache.load();
      VerifyOptions opt;
      opt.ell = ell;
      opt.radius = radius;
      opt.count = count;
      opt.jobs = jobs;
      json doc = run_verify_suite(suite, e, opt);
      emit_json(doc, output);
      cache.save();
      if (!doc["pass"].get<bool>()) return 1;
    } else if (cmd_plot->parsed()) {
      Engine e = Engine::make(type);
      if (e.weyl->rs().rank() != 2) {
        std::cerr << "plot: rank-2 types only\n";
        return 2;
      }
      PlotOptions opt;
      opt.ell = ell;
      opt.window = window;
      if (!chain_spec.empty()) {
        auto colon = chain_spec.find(':');
        if (colon == std::string::npos) throw std::invalid_argument("--chain expects 'a,b:c,d'");
        opt.chain = {parse_weight(chain_spec.substr(0, colon), e.weyl->rs().rank()),
                     parse_weight(chain_spec.substr(colon + 1), e.weyl->rs().rank())};
      }
      emit(render_svg(e, opt), output);
    } else if (cmd_cache->parsed()) {
      if (cache_op == "validate") {
        CacheFile f = read_cache_file(file_path);
        json doc;
        doc["file"] = file_path;
        doc["ctx"] = f.ctx;
        doc["records"] = f.records.size();
        doc["valid"] = true;
        emit_json(doc, output);
      } else if (cache_op == "export") {
        if (type.empty()) throw std::invalid_argument("cache export needs --type");
        Engine e = Engine::make(type);
        for (auto& [g, a] : e.weyl->dominant_alcoves_up_to(radius)) {
          (void)a;
          e.hecke->canonical_N(g);  // warm the ball, then persist
        }
        write_cache_file(file_path, e.type, e.hecke->export_cache());
        json doc;
        doc["file"] = file_path;
        doc["ctx"] = e.type;
        doc["records"] = e.hecke->cache_size();
        doc["valid"] = true;
        emit_json(doc, output);
      } else {  // import
        CacheFile f = read_cache_file(file_path);
        Engine e = Engine::make(f.ctx);
        e.hecke->import_cache(f.records);
        json doc;
        doc["file"] = file_path;
        doc["ctx"] = f.ctx;
        doc["records"] = f.records.size();
        doc["valid"] = true;
        emit_json(doc, output);
      }
    }
  } catch (const TheoryConstraintError& e) {
    std::cerr << "theory constraint: " << e.what() << "\n";
    return 3;
  } catch (const DifferentBlocksError& e) {
    std::cerr << "different blocks: " << e.what() << "\n";
    return 4;
  } catch (const CacheFormatError& e) {
    std::cerr << "cache error: " << e.what() << "\n";
    return 5;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
