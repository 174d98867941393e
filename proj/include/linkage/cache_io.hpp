#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "linkage/hecke.hpp"

namespace linkage {

struct CacheFormatError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Line-delimited canonical-basis cache. First line is a versioned header,
// then one record per line: {"ctx": "...", "basis": "H"|"N", "y": [word],
// "entries": [[[x word], [[exp, coeff], ...]], ...]}. Serialization is
// canonical (records sorted by basis then word, entries by word), so
// export-import round trips are bit exact.
std::string serialize_cache(const std::string& ctx, std::vector<Hecke::CacheRecord> records);

struct CacheFile {
  std::string ctx;
  std::vector<Hecke::CacheRecord> records;
};

// Parses and fully validates; throws CacheFormatError on any defect so a
// partial import can never happen.
CacheFile parse_cache(const std::string& text);

void write_cache_file(const std::string& path, const std::string& ctx,
                      std::vector<Hecke::CacheRecord> records);
CacheFile read_cache_file(const std::string& path);

}  // namespace linkage
