#include <fstream>
#include <map>
#include <string>

#include "catch_amalgamated.hpp"

#include "mixbraid/kernel_action.hpp"
#include "mixbraid/presentations.hpp"

using namespace mixbraid;

namespace {

  Word w(char const* text) { return parse_word(text); }

  bool has(Presentation const& p, std::string const& family, Word const& x) {
    for (auto const& r : p.relators) {
      if (r.family == family && r.word == x) {
        return true;
      }
    }
    return false;
  }

  std::map<std::string, std::size_t> counts(Presentation const& p) {
    std::map<std::string, std::size_t> out;
    for (auto const& r : p.relators) {
      ++out[r.family];
    }
    return out;
  }

  bool freely_reduced(Word const& x) {
    for (std::size_t i = 0; i + 1 < x.size(); ++i) {
      if (x[i].cancels(x[i + 1])) {
        return false;
      }
    }
    return true;
  }

}  // namespace

TEST_CASE("closed presentation", "[presentations]") {
  auto p = build_closed(1, 1);
  CHECK(p.alphabet.size() == 2);
  REQUIRE(p.relators.size() == 1);
  CHECK(p.relators[0].family == "SR");
  CHECK(p.relators[0].word == w("a1 b1^-1 a1^-1 b1"));

  auto q = build_closed(3, 2);
  CHECK(q.relators.size() == 16);
  CHECK(q.count("BR") == 1);
  CHECK(q.count("R1") == 4);
  CHECK(q.count("R2") == 4);
  CHECK(q.count("R3") == 4);
  CHECK(q.count("R4") == 2);
  CHECK(q.count("SR") == 1);

  CHECK(has(build_closed(2, 1), "SR", w("a1 b1^-1 a1^-1 b1 s1^-2")));
}

TEST_CASE("punctured presentation", "[presentations]") {
  auto p = build_punctured(1, 2, 1);
  CHECK(p.alphabet.generators() == std::vector<Generator>{gen_a(1), gen_b(1), gen_z(1)});
  for (auto const& r : p.relators) {
    for (auto const& l : r.word) {
      CHECK(l.gen.family != Family::Sigma);
    }
  }
  auto q = build_punctured(2, 2, 1);
  CHECK(q.count("R7") == 0);
  CHECK(q.count("R8") == 1);
  CHECK(has(build_punctured(3, 2, 1), "R5", w("z1 s2 z1^-1 s2^-1")));
}

TEST_CASE("z_m word", "[presentations]") {
  CHECK(z_m_word(1, 1, 1).word == w("a1 b1^-1 a1^-1 b1"));
  auto zw = z_m_word(2, 2, 1);
  CHECK(zw.word == w("a1 b1^-1 a1^-1 b1 s1^-2 z1"));
  CHECK(zw.orientation == ZmOrientation::word_is_zm_inverse);
  CHECK(ZmWord::sources_disagree);
  CHECK(zw.zm() == zw.word.inverse());
  for (int n = 1; n <= 4; ++n) {
    for (int m = 1; m <= 4; ++m) {
      auto v = abelianize(z_m_word(n, m, 2).word, 2, n, m);
      CHECK(v.sigma == 0);
      for (int j = 1; j <= m - 1; ++j) {
        CHECK(v.z(j) == 1);
      }
      for (int r = 1; r <= 2; ++r) {
        CHECK(v.a(r) == 0);
        CHECK(v.b(r) == 0);
      }
    }
  }
}

TEST_CASE("mixed presentation", "[presentations]") {
  SECTION("class III(b) at r = s with z_1 expanded") {
    auto       p  = build_mixed(1, 1, 1);
    Word const z1 = z_m_word(1, 1, 1).zm();
    Word const x  = w("a1^-1") * z1.inverse();
    Word const a  = w("a1"), c = w("c1");
    CHECK(has(p, "IIIb", c * a * c.inverse() * (x * a * x.inverse()).inverse()));
  }
  SECTION("(SR-bar) with Sigma_1 and Sigma_0") {
    auto       p      = build_mixed(2, 2, 1);
    Word const z2     = z_m_word(2, 2, 1).zm();
    Word const Sigma1 = w("s1^-1 z1") * z2;
    Word const Sigma0 = w("z1") * z2;
    Word const rhs    = Sigma1 * w("z1^-1") * Sigma1.inverse() * Sigma0 * w("z1^-1")
                     * Sigma0.inverse();
    Word const lhs = w("c1 d1^-1 c1^-1 d1 t1^-2");
    CHECK(has(p, "SR-bar", lhs * rhs.inverse()));
    CHECK(sr_bar_rhs(2, 2, 1) == rhs);
  }
  SECTION("class I is the punctured presentation verbatim") {
    for (int n = 1; n <= 3; ++n) {
      for (int m = 1; m <= 3; ++m) {
        auto const mixed = build_mixed(n, m, 2);
        auto const punct = build_punctured(n, m, 2);
        REQUIRE(mixed.relators.size() >= punct.relators.size());
        std::vector<Relator> head(mixed.relators.begin(),
                                  mixed.relators.begin()
                                      + static_cast<std::ptrdiff_t>(punct.relators.size()));
        CHECK(head == punct.relators);
      }
    }
  }
}

TEST_CASE("kernel abelianization presentation", "[presentations]") {
  CHECK(has(build_kernel_abelianization(2, 1, 1), "quot1-3", w("z1")));
  CHECK(build_kernel_abelianization(1, 3, 1).alphabet.size() == 6);
  for (int m = 1; m <= 3; ++m) {
    CHECK(has(build_kernel_abelianization(2, m, 2), "quot1-2", w("s^2")));
  }
  auto inv = abelian_invariants(build_kernel_abelianization(2, 3, 2));
  CHECK(inv.free_rank == 6);
  CHECK(inv.torsion == std::vector<Integer>{2});
}

TEST_CASE("mixed quotient presentation", "[presentations]") {
  auto p = build_mixed_quotient(2, 2, 1);
  auto d = p.family("IIId");
  REQUIRE(d.size() == 1);
  CHECK(d[0] == w("t1 z1 t1^-1 z2^-1"));

  for (int n = 1; n <= 3; ++n) {
    auto q  = build_mixed_quotient(n, 1, 2);
    auto sr = q.family("SR-bar");
    REQUIRE(sr.size() == 1);
    CHECK(sr[0] == w("c1 d1^-1 c1^-1 d1 c2 d2^-1 c2^-1 d2") * Word::power(gen_z(1), n));
    CHECK(q.count("IIId") == 0);
  }
  // II(b) uses the square of t_{m-1}
  CHECK(build_mixed_quotient(3, 3, 1).family("SR-bar")[0]
        == w("c1 d1^-1 c1^-1 d1 t1^-1 t2^-2 t1^-1 z1^3"));

  auto q = build_mixed_quotient(2, 3, 2);
  for (auto x : {"c1", "c2", "d1", "d2"}) {
    for (auto z : {"z1", "z2"}) {
      CHECK(has(q, "IIIa", commutator(w(x), w(z))));
    }
  }
}

TEST_CASE("parameter validation", "[presentations]") {
  CHECK_THROWS_AS(build_closed(0, 1), parameter_error);
  CHECK_THROWS_WITH(build_mixed(1, 0, 1), Catch::Matchers::ContainsSubstring("m must be >= 1"));
  CHECK_THROWS_AS(build_punctured(0, 1, 1), parameter_error);
  CHECK_THROWS_AS(build_kernel_abelianization(1, 1, 0), parameter_error);
  CHECK_THROWS_AS(z_m_word(1, 1, 0), parameter_error);
  CHECK(parse_group_name("kernel-ab") == GroupKind::kernel_ab);
  CHECK(parse_group_name("mixed_quotient") == GroupKind::mixed_quotient);
  CHECK_THROWS_AS(parse_group_name("free"), parameter_error);
}

TEST_CASE("every relator is reduced, nonempty and over the alphabet", "[presentations]") {
  for (int n = 1; n <= 4; ++n) {
    for (int m = 1; m <= 5; ++m) {
      for (int g = 1; g <= 3; ++g) {
        for (auto kind : {GroupKind::closed, GroupKind::punctured, GroupKind::mixed,
                          GroupKind::mixed_quotient, GroupKind::kernel_ab}) {
          auto p = build(kind, g, n, m);
          for (auto const& r : p.relators) {
            REQUIRE(!r.word.empty());
            REQUIRE(freely_reduced(r.word));
            REQUIRE(p.alphabet.contains(r.word));
          }
        }
      }
    }
  }
}

TEST_CASE("class II drops back to the closed relators", "[presentations]") {
  for (int m = 1; m <= 5; ++m) {
    for (int g = 1; g <= 3; ++g) {
      auto const            closed = build_closed(m, g);
      std::vector<Relator>  expected, got;
      for (auto const& r : closed.relators) {
        if (r.family != "SR") {
          expected.push_back(r);
        }
      }
      for (auto const& r : build_mixed(2, m, g).relators) {
        if (r.family.ends_with("-bar") && r.family != "SR-bar") {
          got.push_back({r.family.substr(0, r.family.size() - 4), r.word.substitute([](Generator x) {
                           return Word::letter(detail::drop_from_coset(x));
                         })});
        }
      }
      CHECK(got == expected);
    }
  }
}

TEST_CASE("relator counts match the golden file", "[presentations][golden]") {
  std::ifstream in(std::string(GOLDEN_DIR) + "/relator_counts.json");
  REQUIRE(in);
  auto const golden = nlohmann::json::parse(in);
  REQUIRE(golden.at("points").size() == 60);
  for (auto const& pt : golden.at("points")) {
    int const n = pt["n"], m = pt["m"], g = pt["g"];
    for (auto kind : {GroupKind::closed, GroupKind::punctured, GroupKind::mixed,
                      GroupKind::mixed_quotient, GroupKind::kernel_ab}) {
      auto const expected = pt.at(std::string(group_name(kind))).get<std::map<std::string, std::size_t>>();
      INFO(group_name(kind) << " n=" << n << " m=" << m << " g=" << g);
      CHECK(counts(build(kind, g, n, m)) == expected);
    }
  }
}

TEST_CASE("serialization round trips", "[presentations]") {
  for (auto kind : {GroupKind::closed, GroupKind::punctured, GroupKind::mixed,
                    GroupKind::mixed_quotient, GroupKind::kernel_ab}) {
    auto p = build(kind, 2, 3, 3);
    CHECK(parse_presentation(serialize(p, Format::json), Format::json) == p);
    CHECK(parse_presentation(serialize(p, Format::text), Format::text) == p);
  }
  auto const c = build_closed(2, 1);
  CHECK(parse_presentation(serialize(c, Format::json), Format::json) == c);
  auto const text = serialize(build_closed(1, 1), Format::text);
  CHECK(text.find("SR: a1 b1^-1 a1^-1 b1\n") != std::string::npos);
  auto const j = nlohmann::json::parse(serialize(c, Format::json));
  std::vector<std::string> keys;
  for (auto const& [k, v] : j.items()) {
    keys.push_back(k);
  }
  std::sort(keys.begin(), keys.end());
  CHECK(keys == std::vector<std::string>{"generators", "group", "params", "relators"});
  CHECK_THROWS(parse_presentation("group closed\nparams g=1\n", Format::text));
}
