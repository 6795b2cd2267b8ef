#pragma once

// Explicit presentations of the closed surface braid group B_m(S_g), the
// punctured surface braid group B_n(S_g \ {x_1..x_m}), the mixed braid group
// B_{n,m}(S_g), the abelianized kernel and the quotient of the mixed group by
// the commutator subgroup of the kernel.
//
// Relations u = v are stored as relators u v^-1, tagged with their family.

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "words.hpp"

namespace mixbraid {

  class parameter_error : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
  };

  enum class GroupKind { closed, punctured, mixed, mixed_quotient, kernel_ab };

  inline std::string_view group_name(GroupKind k) {
    switch (k) {
      case GroupKind::closed: return "closed";
      case GroupKind::punctured: return "punctured";
      case GroupKind::mixed: return "mixed";
      case GroupKind::mixed_quotient: return "mixed_quotient";
      case GroupKind::kernel_ab: return "kernel_ab";
    }
    return "?";
  }

  // Accepts both "mixed_quotient" and "mixed-quotient" spellings.
  inline GroupKind parse_group_name(std::string_view s) {
    std::string t(s);
    std::replace(t.begin(), t.end(), '-', '_');
    for (auto k : {GroupKind::closed,
                   GroupKind::punctured,
                   GroupKind::mixed,
                   GroupKind::mixed_quotient,
                   GroupKind::kernel_ab}) {
      if (t == group_name(k)) {
        return k;
      }
    }
    throw parameter_error("unknown group \"" + std::string(s)
                          + "\" (expected closed, punctured, mixed, "
                            "mixed_quotient or kernel_ab)");
  }

  // Parameters not used by a group are 0.
  struct Params {
    int g = 0;
    int n = 0;
    int m = 0;

    bool operator==(Params const&) const = default;
  };

  struct Relator {
    std::string family;
    Word        word;

    bool operator==(Relator const&) const = default;
  };

  struct Presentation {
    GroupKind            group = GroupKind::closed;
    Params               params;
    Alphabet             alphabet;
    std::vector<Relator> relators;

    std::vector<Word> family(std::string_view tag) const {
      std::vector<Word> out;
      for (auto const& r : relators) {
        if (r.family == tag) {
          out.push_back(r.word);
        }
      }
      return out;
    }

    std::size_t count(std::string_view tag) const {
      return static_cast<std::size_t>(
          std::count_if(relators.begin(), relators.end(), [&](auto const& r) {
            return r.family == tag;
          }));
    }

    bool operator==(Presentation const&) const = default;
  };

  namespace detail {

    inline void require(bool ok, char const* name, int value) {
      if (!ok) {
        throw parameter_error(std::string(name) + " must be >= 1 (got "
                              + std::to_string(value) + ")");
      }
    }

    inline Word gen(Generator g, int sign = 1) { return Word::letter(g, sign); }

    // x_1^e x_2^e ... x_{k-1}^e x_k^{2e} x_{k-1}^e ... x_1^e ; empty for k = 0
    inline Word full_twist(Family f, int k, int e) {
      Word w;
      for (int i = 1; i < k; ++i) {
        w *= gen({f, i}, e);
      }
      if (k >= 1) {
        w *= Word::power({f, k}, 2 * e);
      }
      for (int i = k - 1; i >= 1; --i) {
        w *= gen({f, i}, e);
      }
      return w;
    }

    // [x_1, y_1^-1] ... [x_g, y_g^-1]
    inline Word surface_commutators(Family x, Family y, int g) {
      Word w;
      for (int r = 1; r <= g; ++r) {
        w *= commutator(gen({x, r}), gen({y, r}, -1));
      }
      return w;
    }

    class RelatorList {
     public:
      explicit RelatorList(std::vector<Relator>& out) : out_(out) {}

      void equal(std::string const& family, Word const& lhs, Word const& rhs) {
        add(family, lhs * rhs.inverse());
      }

      void add(std::string const& family, Word w) {
        if (w.empty()) {
          throw std::logic_error("relator of family " + family
                                 + " reduced to the empty word");
        }
        out_.push_back({family, std::move(w)});
      }

     private:
      std::vector<Relator>& out_;
    };

    // Relations (BR), (R1)-(R4) on `strands` strands, written in the given
    // letter families; used for both the closed and the punctured group.
    inline void braid_surface_relations(RelatorList& rel,
                                        int          strands,
                                        int          g,
                                        Family       s,
                                        Family       a,
                                        Family       b,
                                        std::string const& suffix) {
      int const k = strands - 1;  // number of sigma generators
      auto      S = [&](int i, int e = 1) { return gen({s, i}, e); };
      auto      A = [&](int r) { return gen({a, r}); };
      auto      B = [&](int r) { return gen({b, r}); };

      std::string const BR = "BR" + suffix, R1 = "R1" + suffix,
                        R2 = "R2" + suffix, R3 = "R3" + suffix,
                        R4 = "R4" + suffix;

      for (int i = 1; i <= k; ++i) {
        for (int j = i + 2; j <= k; ++j) {
          rel.equal(BR, S(i) * S(j), S(j) * S(i));
        }
      }
      for (int i = 1; i + 1 <= k; ++i) {
        rel.equal(BR, S(i) * S(i + 1) * S(i), S(i + 1) * S(i) * S(i + 1));
      }
      for (int r = 1; r <= g; ++r) {
        for (int i = 2; i <= k; ++i) {
          rel.equal(R1, A(r) * S(i), S(i) * A(r));
          rel.equal(R1, B(r) * S(i), S(i) * B(r));
        }
      }
      if (k < 1) {
        return;
      }
      Word const s1i = S(1, -1), s1 = S(1);
      for (int r = 1; r <= g; ++r) {
        rel.equal(R2, s1i * A(r) * s1i * A(r), A(r) * s1i * A(r) * s1i);
        rel.equal(R2, s1i * B(r) * s1i * B(r), B(r) * s1i * B(r) * s1i);
      }
      for (int r = 1; r <= g; ++r) {
        for (int t = 1; t < r; ++t) {
          rel.equal(R3, s1i * A(t) * s1 * A(r), A(r) * s1i * A(t) * s1);
          rel.equal(R3, s1i * B(t) * s1 * B(r), B(r) * s1i * B(t) * s1);
          rel.equal(R3, s1i * A(t) * s1 * B(r), B(r) * s1i * A(t) * s1);
          rel.equal(R3, s1i * B(t) * s1 * A(r), A(r) * s1i * B(t) * s1);
        }
      }
      for (int r = 1; r <= g; ++r) {
        rel.equal(R4, s1i * A(r) * s1i * B(r), B(r) * s1i * A(r) * s1);
      }
    }

    inline std::vector<Generator> surface_generators(Family s,
                                                     int    sigmas,
                                                     Family a,
                                                     Family b,
                                                     int    g) {
      std::vector<Generator> out;
      for (int i = 1; i <= sigmas; ++i) {
        out.push_back({s, i});
      }
      for (int r = 1; r <= g; ++r) {
        out.push_back({a, r});
      }
      for (int r = 1; r <= g; ++r) {
        out.push_back({b, r});
      }
      return out;
    }

  }  // namespace detail

  // Records how the long word of z_m_word relates to z_m. Two readings are in
  // circulation, W = z_m^-1 and W = z_m. Builders here use the first, which is
  // the one compatible with z_m = (z_1 ... z_{m-1})^-1 in the abelianization.
  enum class ZmOrientation { word_is_zm_inverse, word_is_zm };

  struct ZmWord {
    Word          word;
    ZmOrientation orientation = ZmOrientation::word_is_zm_inverse;
    // The other reading disagrees with `orientation` by an inversion.
    static constexpr bool sources_disagree = true;

    Word zm() const {
      return orientation == ZmOrientation::word_is_zm_inverse ? word.inverse()
                                                              : word;
    }
  };

  // W = [a_1,b_1^-1]...[a_g,b_g^-1] s_1^-1...s_{n-1}^-2...s_1^-1 z_1...z_{m-1}
  inline ZmWord z_m_word(int n, int m, int g) {
    detail::require(n >= 1, "n", n);
    detail::require(m >= 1, "m", m);
    detail::require(g >= 1, "g", g);
    Word w = detail::surface_commutators(Family::A, Family::B, g)
             * detail::full_twist(Family::Sigma, n - 1, -1);
    for (int j = 1; j <= m - 1; ++j) {
      w *= detail::gen(gen_z(j));
    }
    return {std::move(w), ZmOrientation::word_is_zm_inverse};
  }

  inline Presentation build_closed(int m, int g) {
    detail::require(m >= 1, "m", m);
    detail::require(g >= 1, "g", g);
    Presentation p;
    p.group    = GroupKind::closed;
    p.params   = {g, 0, m};
    p.alphabet = Alphabet(detail::surface_generators(
        Family::Sigma, m - 1, Family::A, Family::B, g));
    detail::RelatorList rel(p.relators);
    detail::braid_surface_relations(
        rel, m, g, Family::Sigma, Family::A, Family::B, "");
    rel.equal("SR",
              detail::surface_commutators(Family::A, Family::B, g),
              detail::full_twist(Family::Sigma, m - 1, 1));
    return p;
  }

  inline Presentation build_punctured(int n, int m, int g) {
    detail::require(n >= 1, "n", n);
    detail::require(m >= 1, "m", m);
    detail::require(g >= 1, "g", g);
    Presentation p;
    p.group   = GroupKind::punctured;
    p.params  = {g, n, m};
    auto gens = detail::surface_generators(
        Family::Sigma, n - 1, Family::A, Family::B, g);
    for (int j = 1; j <= m - 1; ++j) {
      gens.push_back(gen_z(j));
    }
    p.alphabet = Alphabet(std::move(gens));

    detail::RelatorList rel(p.relators);
    detail::braid_surface_relations(
        rel, n, g, Family::Sigma, Family::A, Family::B, "");

    using detail::gen;
    for (int i = 2; i <= n - 1; ++i) {
      for (int j = 1; j <= m - 1; ++j) {
        rel.equal("R5", gen(gen_z(j)) * gen(sigma(i)), gen(sigma(i)) * gen(gen_z(j)));
      }
    }
    if (n < 2) {
      return p;
    }
    Word const s1 = gen(sigma(1)), s1i = gen(sigma(1), -1);
    for (int r = 1; r <= g; ++r) {
      for (int j = 1; j <= m - 1; ++j) {
        Word const conj = s1i * gen(gen_z(j)) * s1;
        rel.equal("R6", conj * gen(gen_a(r)), gen(gen_a(r)) * conj);
        rel.equal("R6", conj * gen(gen_b(r)), gen(gen_b(r)) * conj);
      }
    }
    for (int j = 1; j <= m - 1; ++j) {
      for (int k = j + 1; k <= m - 1; ++k) {
        Word const conj = s1i * gen(gen_z(j)) * s1;
        rel.equal("R7", conj * gen(gen_z(k)), gen(gen_z(k)) * conj);
      }
    }
    for (int j = 1; j <= m - 1; ++j) {
      Word const z = gen(gen_z(j));
      rel.equal("R8", s1i * z * s1i * z, z * s1i * z * s1i);
    }
    return p;
  }

  namespace detail {

    // sigma -> tau, a -> c, b -> d
    inline Generator lift_to_coset(Generator x) {
      switch (x.family) {
        case Family::Sigma: return tau(x.index);
        case Family::A: return gen_c(x.index);
        case Family::B: return gen_d(x.index);
        default: throw std::logic_error("lift_to_coset: not a closed-group letter");
      }
    }

    inline Generator drop_from_coset(Generator x) {
      switch (x.family) {
        case Family::Tau: return sigma(x.index);
        case Family::C: return gen_a(x.index);
        case Family::D: return gen_b(x.index);
        default: throw std::logic_error("drop_from_coset: not a coset letter");
      }
    }

    // Left side of (SR-bar): [c_1,d_1^-1]...[c_g,d_g^-1] t_1^-1...t_{m-1}^-2...t_1^-1
    inline Word sr_bar_lhs(int m, int g) {
      return surface_commutators(Family::C, Family::D, g)
             * full_twist(Family::Tau, m - 1, -1);
    }

    // (BR-bar)..(R4-bar): the closed relators other than (SR), lifted.
    inline void lifted_closed_relators(RelatorList& rel, int m, int g) {
      for (auto const& r : build_closed(m, g).relators) {
        if (r.family == "SR") {
          continue;
        }
        rel.add(r.family + "-bar", r.word.substitute([](Generator x) {
          return gen(lift_to_coset(x));
        }));
      }
    }

  }  // namespace detail

  // Right side of (SR-bar): prod_{i=n-1}^{0} Sigma_i z_1^-1 Sigma_i^-1 with
  // Sigma_i = s_i^-1...s_1^-1 z_1...z_m, Sigma_0 = z_1...z_m. Every z_m (and
  // z_1 when m = 1) is expanded through z_m_word so the result lies in the
  // alphabet of the punctured group.
  inline Word sr_bar_rhs(int n, int m, int g) {
    detail::require(n >= 1, "n", n);
    detail::require(m >= 1, "m", m);
    detail::require(g >= 1, "g", g);
    Word const zm = z_m_word(n, m, g).zm();
    auto       z  = [&](int j) { return j == m ? zm : detail::gen(gen_z(j)); };
    Word       zprod;
    for (int j = 1; j <= m; ++j) {
      zprod *= z(j);
    }
    Word out;
    for (int i = n - 1; i >= 0; --i) {
      Word Sigma_i;
      for (int t = i; t >= 1; --t) {
        Sigma_i *= detail::gen(sigma(t), -1);
      }
      Sigma_i *= zprod;
      out *= Sigma_i * z(1).inverse() * Sigma_i.inverse();
    }
    return out;
  }

  inline Presentation build_mixed(int n, int m, int g) {
    Presentation punct = build_punctured(n, m, g);
    Presentation p;
    p.group   = GroupKind::mixed;
    p.params  = {g, n, m};
    auto gens = punct.alphabet.generators();
    for (int i = 1; i <= m - 1; ++i) {
      gens.push_back(tau(i));
    }
    for (int r = 1; r <= g; ++r) {
      gens.push_back(gen_c(r));
    }
    for (int r = 1; r <= g; ++r) {
      gens.push_back(gen_d(r));
    }
    p.alphabet = Alphabet(std::move(gens));

    // class (I)
    p.relators = punct.relators;
    detail::RelatorList rel(p.relators);

    // class (II)
    detail::lifted_closed_relators(rel, m, g);
    rel.equal("SR-bar", detail::sr_bar_lhs(m, g), sr_bar_rhs(n, m, g));

    // class (III)
    using detail::gen;
    Word const zm = z_m_word(n, m, g).zm();
    auto       z  = [&](int j) { return j == m ? zm : gen(gen_z(j)); };
    auto       A  = [](int r) { return gen(gen_a(r)); };
    auto       B  = [](int r) { return gen(gen_b(r)); };
    auto conj = [](Word const& x, Word const& y) { return x * y * x.inverse(); };

    std::vector<Word> coset;
    for (int j = 1; j <= m - 1; ++j) {
      coset.push_back(gen(tau(j)));
    }
    for (int r = 1; r <= g; ++r) {
      coset.push_back(gen(gen_c(r)));
    }
    for (int r = 1; r <= g; ++r) {
      coset.push_back(gen(gen_d(r)));
    }

    for (int i = 1; i <= n - 1; ++i) {
      for (auto const& x : coset) {
        rel.equal("IIIa", conj(x, gen(sigma(i))), gen(sigma(i)));
      }
    }

    for (int s = 1; s <= g; ++s) {
      for (int j = 1; j <= m - 1; ++j) {
        rel.equal("IIIb", conj(gen(tau(j)), A(s)), A(s));
      }
      for (int r = 1; r <= g; ++r) {
        Word const c = gen(gen_c(r));
        if (r == s) {
          rel.equal("IIIb", conj(c, A(s)), conj(A(s).inverse() * z(1).inverse(), A(s)));
        } else if (r < s) {
          rel.equal("IIIb", conj(c, A(s)), A(s));
        } else {
          Word const x = A(r).inverse() * z(1).inverse() * A(r) * z(1);
          rel.equal("IIIb", conj(c, A(s)), conj(x, A(s)));
        }
      }
      for (int r = 1; r <= g; ++r) {
        Word const d = gen(gen_d(r));
        if (r == s) {
          Word const x = B(s).inverse() * z(1).inverse() * B(s);
          rel.equal("IIIb", conj(d, A(s)), x * z(1) * A(s) * x.inverse());
        } else if (r < s) {
          rel.equal("IIIb", conj(d, A(s)), A(s));
        } else {
          Word const x = B(r).inverse() * z(1).inverse() * B(r) * z(1);
          rel.equal("IIIb", conj(d, A(s)), conj(x, A(s)));
        }
      }
    }

    for (int s = 1; s <= g; ++s) {
      for (int j = 1; j <= m - 1; ++j) {
        rel.equal("IIIc", conj(gen(tau(j)), B(s)), B(s));
      }
      for (int r = 1; r <= g; ++r) {
        Word const c = gen(gen_c(r));
        if (r == s) {
          rel.equal("IIIc", conj(c, B(s)), A(s).inverse() * z(1).inverse() * A(s) * B(s));
        } else if (r < s) {
          rel.equal("IIIc", conj(c, B(s)), B(s));
        } else {
          Word const x = A(r).inverse() * z(1).inverse() * A(r) * z(1);
          rel.equal("IIIc", conj(c, B(s)), conj(x, B(s)));
        }
      }
      for (int r = 1; r <= g; ++r) {
        Word const d = gen(gen_d(r));
        if (r == s) {
          rel.equal("IIIc", conj(d, B(s)), conj(B(s).inverse() * z(1).inverse(), B(s)));
        } else if (r < s) {
          rel.equal("IIIc", conj(d, B(s)), B(s));
        } else {
          Word const x = B(r).inverse() * z(1).inverse() * B(r) * z(1);
          rel.equal("IIIc", conj(d, B(s)), conj(x, B(s)));
        }
      }
    }

    for (int k = 1; k <= m - 1; ++k) {
      for (int j = 1; j <= m - 1; ++j) {
        Word const t = gen(tau(j));
        if (j == k - 1) {
          rel.equal("IIId", conj(t, z(k)), z(k - 1));
        } else if (j == k) {
          rel.equal("IIId", conj(t, z(k)), conj(z(k), z(k + 1)));
        } else {
          rel.equal("IIId", conj(t, z(k)), z(k));
        }
      }
      for (int r = 1; r <= g; ++r) {
        Word const c = gen(gen_c(r));
        rel.equal("IIId", conj(c, z(k)), k == 1 ? conj(A(r), z(k)) : z(k));
      }
      for (int r = 1; r <= g; ++r) {
        Word const d = gen(gen_d(r));
        rel.equal("IIId", conj(d, z(k)), k == 1 ? conj(B(r).inverse(), z(k)) : z(k));
      }
    }
    return p;
  }

  namespace detail {

    inline std::vector<Generator> kernel_ab_generators(int m, int g) {
      std::vector<Generator> out{pooled_sigma()};
      for (int r = 1; r <= g; ++r) {
        out.push_back(gen_a(r));
      }
      for (int r = 1; r <= g; ++r) {
        out.push_back(gen_b(r));
      }
      for (int j = 1; j <= m; ++j) {
        out.push_back(gen_z(j));
      }
      return out;
    }

    inline void kernel_ab_relators(RelatorList&                  rel,
                                   std::vector<Generator> const& gens,
                                   int                           m,
                                   std::string const&            tag1,
                                   std::string const&            tag2,
                                   std::string const&            tag3) {
      for (std::size_t i = 0; i < gens.size(); ++i) {
        for (std::size_t j = i + 1; j < gens.size(); ++j) {
          rel.add(tag1, commutator(gen(gens[i]), gen(gens[j])));
        }
      }
      rel.add(tag2, Word::power(pooled_sigma(), 2));
      Word prod;
      for (int j = 1; j <= m - 1; ++j) {
        prod *= gen(gen_z(j));
      }
      // z_m = (z_1 ... z_{m-1})^-1
      rel.add(tag3, gen(gen_z(m)) * prod);
    }

  }  // namespace detail

  // `n` does not enter the relators; it is kept in params for reference.
  inline Presentation build_kernel_abelianization(int n, int m, int g) {
    detail::require(n >= 1, "n", n);
    detail::require(m >= 1, "m", m);
    detail::require(g >= 1, "g", g);
    Presentation p;
    p.group    = GroupKind::kernel_ab;
    p.params   = {g, n, m};
    auto gens  = detail::kernel_ab_generators(m, g);
    p.alphabet = Alphabet(gens);
    detail::RelatorList rel(p.relators);
    detail::kernel_ab_relators(rel, gens, m, "quot1-1", "quot1-2", "quot1-3");
    return p;
  }

  // The quotient B_{n,m}(S_g) / [beta, beta] of the mixed group by the
  // commutator subgroup of the kernel beta = B_n(S_g \ {x_1..x_m}).
  // Relation II(b) is emitted with t_{m-1}^-2 in the middle factor, matching
  // the lifted (SR) relation.
  inline Presentation build_mixed_quotient(int n, int m, int g) {
    detail::require(n >= 1, "n", n);
    detail::require(m >= 1, "m", m);
    detail::require(g >= 1, "g", g);
    Presentation p;
    p.group   = GroupKind::mixed_quotient;
    p.params  = {g, n, m};
    auto gens = detail::kernel_ab_generators(m, g);
    auto kernel_gens = gens;
    for (int i = 1; i <= m - 1; ++i) {
      gens.push_back(tau(i));
    }
    for (int r = 1; r <= g; ++r) {
      gens.push_back(gen_c(r));
    }
    for (int r = 1; r <= g; ++r) {
      gens.push_back(gen_d(r));
    }
    p.alphabet = Alphabet(std::move(gens));

    detail::RelatorList rel(p.relators);
    detail::kernel_ab_relators(
        rel, kernel_gens, m, "quot2-I", "quot2-I", "quot2-I");

    detail::lifted_closed_relators(rel, m, g);
    rel.equal("SR-bar",
              detail::sr_bar_lhs(m, g),
              Word::power(gen_z(1), -static_cast<long>(n)));

    using detail::gen;
    auto       A = [](int r) { return gen(gen_a(r)); };
    auto       B = [](int r) { return gen(gen_b(r)); };
    auto       z = [](int j) { return gen(gen_z(j)); };
    Word const sig = gen(pooled_sigma());

    std::vector<Word> taus, cs, ds;
    for (int i = 1; i <= m - 1; ++i) {
      taus.push_back(gen(tau(i)));
    }
    for (int r = 1; r <= g; ++r) {
      cs.push_back(gen(gen_c(r)));
      ds.push_back(gen(gen_d(r)));
    }

    for (auto const* group : {&taus, &cs, &ds}) {
      for (auto const& x : *group) {
        rel.add("IIIa", commutator(x, sig));
      }
    }
    for (int s = 1; s <= g; ++s) {
      for (auto const* group : {&taus, &cs}) {
        for (auto const& x : *group) {
          rel.add("IIIa", commutator(x, A(s)));
        }
      }
    }
    for (int s = 1; s <= g; ++s) {
      for (auto const* group : {&taus, &ds}) {
        for (auto const& x : *group) {
          rel.add("IIIa", commutator(x, B(s)));
        }
      }
    }
    for (int k = 1; k <= m - 1; ++k) {
      for (auto const* group : {&cs, &ds}) {
        for (auto const& x : *group) {
          rel.add("IIIa", commutator(x, z(k)));
        }
      }
    }

    for (int r = 1; r <= g; ++r) {
      for (int s = 1; s <= g; ++s) {
        Word const lhs = cs[r - 1] * B(s) * cs[r - 1].inverse();
        rel.equal("IIIb", lhs, r == s ? z(1).inverse() * B(s) : B(s));
      }
    }
    for (int r = 1; r <= g; ++r) {
      for (int s = 1; s <= g; ++s) {
        Word const lhs = ds[r - 1] * A(s) * ds[r - 1].inverse();
        rel.equal("IIIc", lhs, r == s ? z(1) * A(s) : A(s));
      }
    }
    for (int i = 1; i <= m - 1; ++i) {
      for (int k = 1; k <= m - 1; ++k) {
        Word const lhs = taus[i - 1] * z(k) * taus[i - 1].inverse();
        Word const rhs = i == k - 1 ? z(k - 1) : i == k ? z(k + 1) : z(k);
        rel.equal("IIId", lhs, rhs);
      }
    }
    return p;
  }

  inline Presentation build(GroupKind kind, int g, int n, int m) {
    switch (kind) {
      case GroupKind::closed: return build_closed(m, g);
      case GroupKind::punctured: return build_punctured(n, m, g);
      case GroupKind::mixed: return build_mixed(n, m, g);
      case GroupKind::mixed_quotient: return build_mixed_quotient(n, m, g);
      case GroupKind::kernel_ab: return build_kernel_abelianization(n, m, g);
    }
    throw parameter_error("unknown group kind");
  }

  ////////////////////////////////////////////////////////////////////////////
  // Serialization
  ////////////////////////////////////////////////////////////////////////////

  enum class Format { json, text };

  inline Format parse_format(std::string_view s) {
    if (s == "json") {
      return Format::json;
    }
    if (s == "text") {
      return Format::text;
    }
    throw parameter_error("unknown format \"" + std::string(s)
                          + "\" (expected json or text)");
  }

  inline nlohmann::json to_json(Presentation const& p) {
    nlohmann::json j;
    j["group"]  = std::string(group_name(p.group));
    j["params"] = {{"g", p.params.g}, {"n", p.params.n}, {"m", p.params.m}};
    auto gens   = nlohmann::json::array();
    for (auto const& x : p.alphabet.generators()) {
      gens.push_back(x.to_string());
    }
    j["generators"] = std::move(gens);
    auto rels       = nlohmann::json::array();
    for (auto const& r : p.relators) {
      rels.push_back({{"family", r.family}, {"word", r.word.to_string()}});
    }
    j["relators"] = std::move(rels);
    return j;
  }

  namespace detail {
    inline Generator parse_generator(std::string const& s) {
      Word w = parse_word(s);
      if (w.size() != 1 || w[0].sign != 1) {
        throw word_error("not a single generator: \"" + s + "\"");
      }
      return w[0].gen;
    }
  }  // namespace detail

  inline Presentation presentation_from_json(nlohmann::json const& j) {
    Presentation p;
    p.group    = parse_group_name(j.at("group").get<std::string>());
    auto const& par = j.at("params");
    p.params   = {par.at("g").get<int>(), par.at("n").get<int>(), par.at("m").get<int>()};
    std::vector<Generator> gens;
    for (auto const& x : j.at("generators")) {
      gens.push_back(detail::parse_generator(x.get<std::string>()));
    }
    p.alphabet = Alphabet(std::move(gens));
    for (auto const& r : j.at("relators")) {
      p.relators.push_back({r.at("family").get<std::string>(),
                            parse_word(r.at("word").get<std::string>())});
    }
    return p;
  }

  // Text layout:
  //   group <name>
  //   params g=<g> n=<n> m=<m>
  //   generators <x> <y> ...
  //   <family>: <word>          (one line per relator)
  inline std::string serialize(Presentation const& p, Format format) {
    if (format == Format::json) {
      return to_json(p).dump(2) + "\n";
    }
    std::ostringstream os;
    os << "group " << group_name(p.group) << "\n";
    os << "params g=" << p.params.g << " n=" << p.params.n << " m=" << p.params.m
       << "\n";
    os << "generators";
    for (auto const& x : p.alphabet.generators()) {
      os << ' ' << x.to_string();
    }
    os << "\n";
    for (auto const& r : p.relators) {
      os << r.family << ": " << r.word.to_string() << "\n";
    }
    return os.str();
  }

  inline Presentation parse_presentation(std::string const& text, Format format) {
    if (format == Format::json) {
      return presentation_from_json(nlohmann::json::parse(text));
    }
    std::istringstream is(text);
    std::string        line;
    Presentation       p;
    auto               expect = [&](std::string const& key) {
      if (!std::getline(is, line) || line.rfind(key, 0) != 0) {
        throw word_error("presentation text: expected \"" + key + "\" line");
      }
      return line.substr(key.size());
    };
    std::string name = expect("group ");
    p.group          = parse_group_name(name);
    std::istringstream params(expect("params "));
    std::string        tok;
    while (params >> tok) {
      auto eq = tok.find('=');
      if (eq == std::string::npos) {
        throw word_error("presentation text: bad params token " + tok);
      }
      int v = std::stoi(tok.substr(eq + 1));
      std::string k = tok.substr(0, eq);
      if (k == "g") {
        p.params.g = v;
      } else if (k == "n") {
        p.params.n = v;
      } else if (k == "m") {
        p.params.m = v;
      }
    }
    std::istringstream     gens(expect("generators"));
    std::vector<Generator> alphabet;
    while (gens >> tok) {
      alphabet.push_back(detail::parse_generator(tok));
    }
    p.alphabet = Alphabet(std::move(alphabet));
    while (std::getline(is, line)) {
      if (line.empty()) {
        continue;
      }
      auto colon = line.find(':');
      if (colon == std::string::npos) {
        throw word_error("presentation text: relator line without family");
      }
      p.relators.push_back(
          {line.substr(0, colon), parse_word(line.substr(colon + 1))});
    }
    return p;
  }

}  // namespace mixbraid
