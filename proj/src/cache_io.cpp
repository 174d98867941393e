#include "linkage/cache_io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace linkage {

namespace {

using json = nlohmann::ordered_json;

constexpr int kVersion = 1;

json word_json(const std::vector<int>& w) { return json(w); }

json poly_json(const Laurent& p) {
  json arr = json::array();
  for (auto& [e, c] : p.terms()) arr.push_back(json::array({e, c}));
  return arr;
}

Laurent poly_from_json(const json& j) {
  if (!j.is_array()) throw CacheFormatError("polynomial must be an array");
  Laurent p;
  for (auto& term : j) {
    if (!term.is_array() || term.size() != 2 || !term[0].is_number_integer() ||
        !term[1].is_number_integer())
      throw CacheFormatError("polynomial term must be [exp, coeff]");
    p.add_term(term[0].get<int>(), term[1].get<long long>());
  }
  return p;
}

std::vector<int> word_from_json(const json& j) {
  if (!j.is_array()) throw CacheFormatError("word must be an array of generator indices");
  std::vector<int> w;
  for (auto& v : j) {
    if (!v.is_number_integer() || v.get<long long>() < 0)
      throw CacheFormatError("word letters must be nonnegative integers");
    w.push_back(v.get<int>());
  }
  return w;
}

}  // namespace

std::string serialize_cache(const std::string& ctx, std::vector<Hecke::CacheRecord> records) {
  std::sort(records.begin(), records.end(), [](const Hecke::CacheRecord& a, const Hecke::CacheRecord& b) {
    if (a.basis != b.basis) return a.basis < b.basis;
    return a.y < b.y;
  });
  std::ostringstream out;
  json header{{"format", "klcache"}, {"version", kVersion}};
  out << header.dump() << "\n";
  for (auto& rec : records) {
    std::sort(rec.entries.begin(), rec.entries.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    json line{{"ctx", ctx},
              {"basis", std::string(1, rec.basis)},
              {"y", word_json(rec.y)}};
    json entries = json::array();
    for (auto& [w, p] : rec.entries) entries.push_back(json::array({word_json(w), poly_json(p)}));
    line["entries"] = entries;
    out << line.dump() << "\n";
  }
  return out.str();
}

CacheFile parse_cache(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw CacheFormatError("empty cache file");
  json header;
  try {
    header = json::parse(line);
  } catch (const json::exception&) {
    throw CacheFormatError("cache header is not valid JSON");
  }
  if (!header.is_object() || header.value("format", "") != "klcache")
    throw CacheFormatError("not a klcache file");
  if (!header.contains("version") || !header["version"].is_number_integer() ||
      header["version"].get<int>() != kVersion)
    throw CacheFormatError("unsupported cache version");

  CacheFile out;
  bool first = true;
  size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) throw CacheFormatError("blank line in cache file");
    json rec;
    try {
      rec = json::parse(line);
    } catch (const json::exception&) {
      throw CacheFormatError("invalid JSON record at line " + std::to_string(lineno));
    }
    if (!rec.is_object() || !rec.contains("ctx") || !rec.contains("basis") || !rec.contains("y") ||
        !rec.contains("entries"))
      throw CacheFormatError("record missing fields at line " + std::to_string(lineno));
    std::string ctx = rec["ctx"].get<std::string>();
    if (first) {
      out.ctx = ctx;
      first = false;
    } else if (ctx != out.ctx) {
      throw CacheFormatError("mixed contexts in one cache file");
    }
    std::string basis = rec["basis"].get<std::string>();
    if (basis != "H" && basis != "N") throw CacheFormatError("basis must be H or N");
    Hecke::CacheRecord r;
    r.basis = basis[0];
    r.y = word_from_json(rec["y"]);
    if (!rec["entries"].is_array()) throw CacheFormatError("entries must be an array");
    for (auto& e : rec["entries"]) {
      if (!e.is_array() || e.size() != 2) throw CacheFormatError("entry must be [word, poly]");
      r.entries.emplace_back(word_from_json(e[0]), poly_from_json(e[1]));
    }
    out.records.push_back(std::move(r));
  }
  return out;
}

void write_cache_file(const std::string& path, const std::string& ctx,
                      std::vector<Hecke::CacheRecord> records) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw CacheFormatError("cannot open cache file for writing: " + path);
  f << serialize_cache(ctx, std::move(records));
}

CacheFile read_cache_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw CacheFormatError("cannot open cache file: " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_cache(ss.str());
}

}  // namespace linkage
