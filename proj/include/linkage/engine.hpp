#pragma once

#include <memory>
#include <string>

#include "linkage/blocks.hpp"
#include "linkage/periodic.hpp"

namespace linkage {

// One bundle of contexts per root system; everything shares the same caches.
struct Engine {
  std::string type;
  std::shared_ptr<const Weyl> weyl;
  std::shared_ptr<Hecke> hecke;
  std::shared_ptr<Periodic> periodic;
  std::shared_ptr<Blocks> blocks;

  static Engine make(const std::string& type_string) {
    Engine e;
    auto w = std::make_shared<Weyl>(RootSystem(parse_cartan_types(type_string)));
    e.type = w->rs().type_string();
    e.weyl = w;
    e.hecke = std::make_shared<Hecke>(w);
    e.periodic = std::make_shared<Periodic>(w, e.hecke);
    e.blocks = std::make_shared<Blocks>(w, e.hecke);
    return e;
  }
};

}  // namespace linkage
