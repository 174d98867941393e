#include "doctest.h"
#include "linkage/hecke.hpp"

#include <random>
#include <thread>

using namespace linkage;

namespace {

std::shared_ptr<const Weyl> make_weyl(const std::string& t) {
  return std::make_shared<Weyl>(RootSystem(parse_cartan_types(t)));
}

std::mt19937 rng(987654);

AffineElt random_fw(const Hecke& h, int len) {
  const Weyl& w = h.weyl();
  std::uniform_int_distribution<int> pick(0, w.num_generators() - 1);
  for (;;) {
    AffineElt e = w.identity();
    for (int i = 0; i < len; ++i) e = w.compose(e, w.generators()[pick(rng)]);
    if (h.in_fW(e)) return e;
  }
}

// A_k alcove of the affine A1 line: interval (k, k+1)
Alcove a1_alcove(int k) { return Alcove{{k + 1}}; }

}  // namespace

TEST_CASE("hecke canonical basis basics") {
  auto w = make_weyl("A1");
  Hecke h(w);
  CHECK(h.h_poly(w->identity(), w->identity()).is_one());
  for (int s = 0; s < 2; ++s) {
    AffineElt g = w->generators()[s];
    CHECK(h.h_poly(w->identity(), g) == Laurent::monomial(1, 1));
    // bar-invariance of C_s, checked against the bar involution directly
    ModuleElt cs{{g, Laurent(1)}, {w->identity(), Laurent::monomial(1, 1)}};
    CHECK(h.hecke_bar(cs) == cs);
  }
}

TEST_CASE("hecke bar involution and canonical bar-invariance") {
  for (const char* t : {"A1", "A2"}) {
    auto w = make_weyl(t);
    Hecke h(w);
    for (auto& [g, a] : w->alcoves_up_to(4)) {
      (void)a;
      ModuleElt std{{g, Laurent(1)}};
      CHECK(h.hecke_bar(h.hecke_bar(std)) == std);
      CHECK(h.hecke_bar(*h.canonical_H(g)) == *h.canonical_H(g));
    }
  }
}

TEST_CASE("h poly inverse symmetry") {
  auto w = make_weyl("C2");
  Hecke h(w);
  auto ball = w->alcoves_up_to(6);
  std::uniform_int_distribution<size_t> pick(0, ball.size() - 1);
  for (int i = 0; i < 40; ++i) {
    const AffineElt& x = ball[pick(rng)].first;
    const AffineElt& y = ball[pick(rng)].first;
    CHECK(h.h_poly(x, y) == h.h_poly(w->inverse(x), w->inverse(y)));
  }
}

TEST_CASE("antispherical action rules in A1") {
  auto w = make_weyl("A1");
  Hecke h(w);
  ModuleElt ne{{w->identity(), Laurent(1)}};
  // finite generator kills N_e
  CHECK(h.asph_act_Cs(ne, 0).empty());
  // affine generator: N_e C_s0 = N_s0 + v N_e
  ModuleElt up = h.asph_act_Cs(ne, 1);
  REQUIRE(up.size() == 2);
  CHECK(up.at(w->generators()[1]).is_one());
  CHECK(up.at(w->identity()) == Laurent::monomial(1, 1));
}

TEST_CASE("quadratic relation for the C_s action") {
  for (const char* t : {"A1", "C2"}) {
    auto w = make_weyl(t);
    Hecke h(w);
    Laurent vvinv = Laurent::monomial(1, 1) + Laurent::monomial(1, -1);
    for (int i = 0; i < 50; ++i) {
      AffineElt x = random_fw(h, 5);
      std::uniform_int_distribution<int> pick(0, w->num_generators() - 1);
      int s = pick(rng);
      ModuleElt nx{{x, Laurent(1)}};
      ModuleElt once = h.asph_act_Cs(nx, s);
      ModuleElt twice = h.asph_act_Cs(once, s);
      ModuleElt expect;
      for (auto& [e, p] : once) expect[e] = p * vvinv;
      CHECK(twice == expect);
    }
  }
}

TEST_CASE("antispherical canonical basis in affine A1") {
  auto w = make_weyl("A1");
  Hecke h(w);
  // independent rank-1 oracle: the recursion N(k) = N(k-1)C_{s(k)} produces
  // two-term elements N_{A_k} + v N_{A_{k-1}} with no correction ever needed;
  // frozen here after hand-checking the first steps
  for (int k = 1; k <= 5; ++k) {
    AffineElt yk = w->element_of(a1_alcove(k));
    AffineElt yk1 = w->element_of(a1_alcove(k - 1));
    auto c = h.canonical_N(yk);
    REQUIRE(c->size() == 2);
    CHECK(c->at(yk).is_one());
    CHECK(c->at(yk1) == Laurent::monomial(1, 1));
  }
  CHECK(h.n_poly(w->element_of(a1_alcove(0)), w->element_of(a1_alcove(2))).is_zero());
  CHECK(h.n_at_one(w->element_of(a1_alcove(0)), w->element_of(a1_alcove(1))) == 1);
}

TEST_CASE("antispherical bar invariance and degree bounds") {
  for (const char* t : {"A1", "A2", "C2"}) {
    auto w = make_weyl(t);
    Hecke h(w);
    for (auto& [g, a] : w->dominant_alcoves_up_to(4)) {
      (void)a;
      auto c = h.canonical_N(g);
      CHECK(h.asph_bar(*c) == *c);
      for (auto& [x, p] : *c) {
        if (x == g)
          CHECK(p.is_one());
        else
          CHECK(p.in_v_zpos());
        CHECK(h.in_fW(x));
      }
    }
  }
}

TEST_CASE("n at one equals one on the diagonal") {
  auto w = make_weyl("C2");
  Hecke h(w);
  for (auto& [g, a] : w->dominant_alcoves_up_to(5)) {
    (void)a;
    CHECK(h.n_at_one(g, g) == 1);
  }
}

TEST_CASE("h vs n alternating sum identity") {
  {
    auto w = make_weyl("A1");
    Hecke h(w);
    CHECK(h.h_vs_n_identity(w->identity(), w->identity()));
    // all pairs of minimal right-coset representatives in a ball
    std::vector<AffineElt> mins;
    for (auto& [g, a] : w->alcoves_up_to(6)) {
      (void)a;
      if (w->length(w->compose(g, w->generators()[0])) > w->length(g)) mins.push_back(g);
    }
    for (auto& u : mins)
      for (auto& v : mins) CHECK(h.h_vs_n_identity(u, v));
  }
  {
    auto w = make_weyl("A2");
    Hecke h(w);
    std::vector<AffineElt> mins;
    for (auto& [g, a] : w->alcoves_up_to(5)) {
      (void)a;
      bool min = true;
      for (int i = 0; i < w->rs().rank(); ++i)
        if (w->length(w->compose(g, w->generators()[i])) < w->length(g)) min = false;
      if (min) mins.push_back(g);
    }
    CHECK(mins.size() >= 5);
    for (auto& u : mins)
      for (auto& v : mins) CHECK(h.h_vs_n_identity(u, v));
  }
}

TEST_CASE("coset invariance of n at one") {
  // for w maximal in wW_q (and in fW), n_{w'r,w}(1) is constant over r,
  // vanishing when max(w'W_q) leaves fW
  auto w = make_weyl("C2");
  Hecke h(w);
  Facet wall = w->facet_of(QPoint{Rat(1, 4), Rat(0)});
  auto stab = w->stabilizer(wall);
  int tested = 0;
  for (auto& [g, a] : w->alcoves_up_to(8)) {
    (void)a;
    if (!w->is_in_fWg(g, stab.gens)) continue;
    for (auto& [g2, a2] : w->alcoves_up_to(6)) {
      (void)a2;
      if (!h.in_fW(g2)) continue;
      long long base = h.n_at_one(g2, g);
      for (auto& r : stab.elements) CHECK(h.n_at_one(w->compose(g2, r), g) == base);
      if (!h.in_fW(w->max_in_wWg(g2, stab.gens))) CHECK(base == 0);
      ++tested;
    }
  }
  CHECK(tested > 50);
}

TEST_CASE("concurrent canonical basis computation") {
  auto w = make_weyl("A2");
  Hecke h(w);
  auto dom = w->dominant_alcoves_up_to(6);
  std::vector<std::thread> workers;
  std::atomic<bool> ok{true};
  for (int t = 0; t < 4; ++t) {
    workers.emplace_back([&, t]() {
      try {
        for (size_t i = t; i < dom.size(); i += 2) {
          auto c = h.canonical_N(dom[i].first);
          if (!c->count(dom[i].first)) ok = false;
        }
      } catch (...) {
        ok = false;
      }
    });
  }
  for (auto& th : workers) th.join();
  CHECK(ok.load());
  // deterministic result independent of scheduling
  Hecke h2(w);
  for (auto& [g, a] : dom) {
    (void)a;
    CHECK(*h.canonical_N(g) == *h2.canonical_N(g));
  }
}
