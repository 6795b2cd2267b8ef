#pragma once

// Symbolic section ansatz s(x) = x * K_x for the coset letters t_i, c_r, d_r,
// the integer constraint system obtained by pushing the lifted closed
// relators through the kernel action, and the resulting obstruction to
// splitting for each number n of extra strands.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "intlinalg.hpp"
#include "kernel_action.hpp"
#include "presentations.hpp"
#include "words.hpp"

namespace mixbraid {

  // Integer combination of ansatz unknowns.
  struct LinearForm {
    std::vector<long long> coef;

    LinearForm& operator+=(LinearForm const& o) {
      if (coef.size() < o.coef.size()) {
        coef.resize(o.coef.size(), 0);
      }
      for (std::size_t i = 0; i < o.coef.size(); ++i) {
        coef[i] += o.coef[i];
      }
      return *this;
    }
    friend LinearForm operator*(LinearForm f, long long k) {
      for (auto& c : f.coef) {
        c *= k;
      }
      return f;
    }
    LinearForm operator-() const { return *this * -1; }

    long long at(std::size_t i) const { return i < coef.size() ? coef[i] : 0; }
  };

  // One unknown per (coset letter, kernel coordinate); the last coordinate
  // of each letter is sigma and is only meaningful modulo 2.
  class Ansatz {
   public:
    Ansatz(int g, int m) : layout_(g, m) {
      for (int i = 1; i <= m - 1; ++i) {
        letters_.push_back(tau(i));
      }
      for (int r = 1; r <= g; ++r) {
        letters_.push_back(gen_c(r));
      }
      for (int r = 1; r <= g; ++r) {
        letters_.push_back(gen_d(r));
      }
    }

    KernelLayout const&           layout() const noexcept { return layout_; }
    std::vector<Generator> const& letters() const noexcept { return letters_; }
    std::size_t width() const noexcept { return layout_.dim() + 1; }
    std::size_t unknowns() const noexcept { return letters_.size() * width(); }
    std::size_t integer_unknowns() const noexcept {
      return letters_.size() * layout_.dim();
    }
    std::size_t parity_unknowns() const noexcept { return letters_.size(); }

    std::size_t letter_index(Generator x) const {
      for (std::size_t i = 0; i < letters_.size(); ++i) {
        if (letters_[i] == x) {
          return i;
        }
      }
      throw word_error("ansatz has no letter " + x.to_string());
    }

    // coordinate: 0..dim-1 as in KernelLayout, dim for sigma
    std::size_t unknown(Generator x, std::size_t coordinate) const {
      return letter_index(x) * width() + coordinate;
    }
    std::size_t sigma_unknown(Generator x) const { return unknown(x, layout_.dim()); }

    // Symbolic kernel K_x: coordinate i is the unknown (x, i).
    std::vector<LinearForm> kernel(Generator x) const {
      std::vector<LinearForm> out(width());
      for (std::size_t i = 0; i < width(); ++i) {
        out[i].coef.assign(unknowns(), 0);
        out[i].coef[unknown(x, i)] = 1;
      }
      return out;
    }

    // k[i,s], l[i,s], m[i,t], n[i] for t_i; kbar/lbar/mbar/nbar for c_r;
    // ktilde/ltilde/mtilde/ntilde for d_r.
    std::string unknown_name(std::size_t u) const {
      Generator const   x = letters_[u / width()];
      std::size_t const c = u % width();
      std::string       suffix;
      switch (x.family) {
        case Family::C: suffix = "bar"; break;
        case Family::D: suffix = "tilde"; break;
        default: break;
      }
      std::string const sub = std::to_string(x.index);
      if (c == layout_.dim()) {
        return "n" + suffix + "[" + sub + "]";
      }
      std::string const coord = layout_.coordinate_name(c);
      char const        head  = coord[0] == 'a' ? 'k' : coord[0] == 'b' ? 'l' : 'm';
      return std::string(1, head) + suffix + "[" + sub + "," + coord.substr(1) + "]";
    }

   private:
    KernelLayout           layout_;
    std::vector<Generator> letters_;
  };

  inline Ansatz build_ansatz(int g, int m) {
    detail::require(g >= 1, "g", g);
    detail::require(m >= 1, "m", m);
    return Ansatz(g, m);
  }

  struct ConstraintRow {
    std::string family;       // relator family of the lifted relation
    std::size_t relator = 0;  // index into build_closed(m, g).relators
    std::string coordinate;   // "a1", ..., "z3", "sigma"
  };

  struct ConstraintSystem {
    int                        g = 1;
    int                        m = 1;
    ParametricSystem           system;
    std::vector<ConstraintRow> rows;
  };

  // s(w) = w * (accumulated kernel) for each lifted closed relator w; since
  // w equals kernel_correction(w) in the quotient, s(w) = 1 forces the
  // accumulated kernel to be -kernel_correction(w).
  inline ConstraintSystem extract_constraints(int g, int m) {
    Ansatz const       ansatz = build_ansatz(g, m);
    KernelLayout const L      = ansatz.layout();
    std::size_t const  U      = ansatz.unknowns();
    std::size_t const  W      = ansatz.width();

    auto const closed = build_closed(m, g);

    ConstraintSystem cs;
    cs.g = g;
    cs.m = m;
    std::vector<std::vector<long long>> A;
    std::vector<long long>              b1;
    for (std::size_t ri = 0; ri < closed.relators.size(); ++ri) {
      auto const&       rel    = closed.relators[ri];
      std::string const family = rel.family + "-bar";
      Word const        w      = rel.word.substitute(
          [](Generator x) { return Word::letter(detail::lift_to_coset(x)); });

      std::vector<LinearForm> acc(W);
      for (auto& f : acc) {
        f.coef.assign(U, 0);
      }
      for (auto const& l : w) {
        acc = action_of(l.gen, -l.sign, g, m).apply(acc);
        auto K = ansatz.kernel(l.gen);
        if (l.sign == -1) {
          // s(x^-1) = x^-1 * x(-K_x)x^-1
          for (auto& f : K) {
            f = -f;
          }
          K = action_of(l.gen, 1, g, m).apply(K);
        }
        for (std::size_t c = 0; c < W; ++c) {
          acc[c] += K[c];
        }
      }
      // rhs = -kernel_correction, which is -n e_{z_1} for (SR-bar)
      ExponentVector const at_one = kernel_correction(family, w, g, 1, m);
      for (std::size_t c = 0; c < W; ++c) {
        std::vector<long long> row(U);
        for (std::size_t u = 0; u < U; ++u) {
          row[u] = acc[c].at(u);
        }
        A.push_back(std::move(row));
        long long n_coef = 0;
        if (c < L.dim()) {
          n_coef = -at_one.free[c];
        }
        b1.push_back(n_coef);
        cs.rows.push_back(
            {family, ri, c < L.dim() ? L.coordinate_name(c) : std::string("sigma")});
        cs.system.row_modulus.push_back(c < L.dim() ? 0 : 2);
      }
    }

    cs.system.A = IntMatrix(A.size(), U);
    for (std::size_t i = 0; i < A.size(); ++i) {
      for (std::size_t j = 0; j < U; ++j) {
        cs.system.A(i, j) = A[i][j];
      }
    }
    cs.system.b0.assign(A.size(), Integer(0));
    cs.system.b1.assign(b1.begin(), b1.end());
    return cs;
  }

  ////////////////////////////////////////////////////////////////////////////
  // Obstruction
  ////////////////////////////////////////////////////////////////////////////

  struct ObstructionDiagnostics {
    std::optional<Integer>   k;   // -(m[1,1] + m[1,2])
    std::optional<Integer>   M;   // m[m-1,1]
    std::optional<Integer>   N;   // n[1]
    std::optional<Integer>   mu;  // m[1,2] + m[2,3] + ... + m[m-2,m-1]
    std::vector<std::string> identity_violations;
  };

  struct ObstructionReport {
    int                      g = 1;
    int                      m = 1;
    ParameterAnswer          answer;
    std::size_t              rows = 0;
    std::size_t              cols = 0;
    std::optional<Integer>   witness_n;
    std::optional<IntVector> witness;
    ObstructionDiagnostics   diagnostics;

    Integer const& modulus() const noexcept { return answer.modulus; }
    bool admissible(Integer const& n) const { return answer.contains(n); }
  };

  namespace detail {

    inline Integer ansatz_value(Ansatz const& a, IntVector const& x, Generator letter,
                                std::size_t coordinate) {
      return x[a.unknown(letter, coordinate)];
    }

    inline ObstructionDiagnostics diagnose(int g, int m, IntVector const& x) {
      Ansatz const           a = build_ansatz(g, m);
      KernelLayout const     L = a.layout();
      ObstructionDiagnostics d;
      auto mij = [&](int i, int j) { return ansatz_value(a, x, tau(i), L.z(j)); };
      if (m >= 2) {
        d.N = ansatz_value(a, x, tau(1), L.dim());
      }
      if (m >= 3) {
        d.k = -(mij(1, 1) + mij(1, 2));
        d.M = mij(m - 1, 1);
        Integer mu(0);
        for (int i = 1; i <= m - 2; ++i) {
          mu += mij(i, i + 1);
        }
        d.mu = mu;
        for (int i = 1; i <= m - 2; ++i) {
          if (mij(i, i) + mij(i, i + 1) != mij(m - 1, m - 1) - 2 * *d.M) {
            d.identity_violations.push_back(
                "m[" + std::to_string(i) + "," + std::to_string(i) + "] + m["
                + std::to_string(i) + "," + std::to_string(i + 1)
                + "] != m[m-1,m-1] - 2M");
          }
        }
        for (int r = 1; r <= g; ++r) {
          Integer const kbar   = ansatz_value(a, x, gen_c(r), L.a(r));
          Integer const ltilde = ansatz_value(a, x, gen_d(r), L.b(r));
          if (kbar != *d.k || ltilde != *d.k) {
            d.identity_violations.push_back("kbar[" + std::to_string(r) + ","
                                            + std::to_string(r) + "] = ltilde["
                                            + std::to_string(r) + ","
                                            + std::to_string(r) + "] = k fails");
          }
        }
      }
      return d;
    }

  }  // namespace detail

  inline ObstructionReport obstruction(int g, int m) {
    auto const        cs = extract_constraints(g, m);
    ObstructionReport rep;
    rep.g      = g;
    rep.m      = m;
    rep.answer = feasible_parameter_set(cs.system);
    rep.rows   = cs.system.rows();
    rep.cols   = cs.system.unknowns();
    if (rep.answer.is_empty()) {
      return rep;
    }
    rep.witness_n = rep.answer.modulus == 0 ? rep.answer.offset : rep.answer.modulus;
    rep.witness   = solve_witness(cs.system, *rep.witness_n);
    if (rep.witness) {
      rep.diagnostics = detail::diagnose(g, m, *rep.witness);
    }
    return rep;
  }

  inline nlohmann::json to_json(ObstructionReport const& r) {
    auto opt = [](std::optional<Integer> const& x) -> nlohmann::json {
      return x ? integer_to_json(*x) : nlohmann::json(nullptr);
    };
    nlohmann::json j;
    j["g"]         = r.g;
    j["m"]         = r.m;
    j["modulus"]   = r.answer.is_empty() ? nlohmann::json(nullptr)
                                         : integer_to_json(r.answer.modulus);
    j["rows"]      = r.rows;
    j["cols"]      = r.cols;
    j["witness_n"] = opt(r.witness_n);
    auto w         = nlohmann::json::array();
    if (r.witness) {
      for (auto const& x : *r.witness) {
        w.push_back(integer_to_json(x));
      }
    }
    j["witness"]     = w;
    j["diagnostics"] = {{"k", opt(r.diagnostics.k)},
                        {"M", opt(r.diagnostics.M)},
                        {"N", opt(r.diagnostics.N)},
                        {"mu", opt(r.diagnostics.mu)}};
    return j;
  }

  // Violated row indices of extract_constraints(g, m) at n; empty means pass.
  inline std::vector<std::size_t> verify_ansatz(int g, int m, Integer const& n,
                                                IntVector const& assignment) {
    auto const cs = extract_constraints(g, m);
    if (assignment.size() != cs.system.unknowns()) {
      throw linalg_error("verify_ansatz: assignment has " + std::to_string(assignment.size())
                         + " entries, the ansatz for g=" + std::to_string(g) + ", m="
                         + std::to_string(m) + " has " + std::to_string(cs.system.unknowns()));
    }
    return cs.system.violations(assignment, n);
  }

  ////////////////////////////////////////////////////////////////////////////
  // Reduced images
  ////////////////////////////////////////////////////////////////////////////

  struct ReducedForm {
    std::vector<std::string> images;      // "t1 z1^2 z2^-1 s", one per letter
    std::vector<std::string> violations;  // departures from the reduced pattern
  };

  inline ReducedForm reduced_form(int g, int m, Integer const& n, IntVector const& assignment) {
    if (!verify_ansatz(g, m, n, assignment).empty()) {
      throw linalg_error("reduced_form: assignment does not satisfy the constraints at n = "
                         + n.str());
    }
    Ansatz const       a = build_ansatz(g, m);
    KernelLayout const L = a.layout();
    ReducedForm        out;
    auto val = [&](Generator x, std::size_t c) { return assignment[a.unknown(x, c)]; };

    for (auto const& x : a.letters()) {
      Word w = Word::letter(x);
      for (std::size_t c = 0; c < L.dim(); ++c) {
        auto const e = static_cast<long>(val(x, c));
        Generator  y = c < static_cast<std::size_t>(g)       ? gen_a(static_cast<int>(c) + 1)
                       : c < static_cast<std::size_t>(2 * g) ? gen_b(static_cast<int>(c) - g + 1)
                                                             : gen_z(static_cast<int>(c) - 2 * g + 1);
        w *= Word::power(y, e);
      }
      Integer parity = val(x, L.dim()) % 2;
      if (parity != 0) {
        w *= Word::letter(pooled_sigma());
      }
      out.images.push_back(w.to_string());
    }

    auto flag = [&](Generator x, std::size_t c, std::string const& expect) {
      out.violations.push_back(x.to_string() + ": " + L.coordinate_name(c) + " = "
                               + val(x, c).str() + " (expected " + expect + ")");
    };
    std::optional<Integer> k;
    if (m >= 3) {
      k = -(val(tau(1), L.z(1)) + val(tau(1), L.z(2)));
    }
    for (int i = 1; i <= m - 1; ++i) {
      for (int r = 1; r <= g; ++r) {
        if (val(tau(i), L.a(r)) != 0) flag(tau(i), L.a(r), "0");
        if (val(tau(i), L.b(r)) != 0) flag(tau(i), L.b(r), "0");
      }
      for (int j = 1; j <= m - 1; ++j) {
        if (i <= m - 2 && j != i && j != i + 1 && val(tau(i), L.z(j)) != 0) {
          flag(tau(i), L.z(j), "0");
        }
        if (i == m - 1 && j <= m - 2 && val(tau(i), L.z(j)) != val(tau(i), L.z(1))) {
          flag(tau(i), L.z(j), "M = " + val(tau(i), L.z(1)).str());
        }
      }
    }
    for (int r = 1; r <= g; ++r) {
      for (int s = 1; s <= g; ++s) {
        if (s != r && val(gen_c(r), L.a(s)) != 0) flag(gen_c(r), L.a(s), "0");
        if (val(gen_c(r), L.b(s)) != 0) flag(gen_c(r), L.b(s), "0");
        if (val(gen_d(r), L.a(s)) != 0) flag(gen_d(r), L.a(s), "0");
        if (s != r && val(gen_d(r), L.b(s)) != 0) flag(gen_d(r), L.b(s), "0");
      }
      for (int j = 2; j <= m - 1; ++j) {
        if (val(gen_c(r), L.z(j)) != 0) flag(gen_c(r), L.z(j), "0");
        if (val(gen_d(r), L.z(j)) != 0) flag(gen_d(r), L.z(j), "0");
      }
      if (k) {
        if (val(gen_c(r), L.a(r)) != *k) flag(gen_c(r), L.a(r), "k = " + k->str());
        if (val(gen_d(r), L.b(r)) != *k) flag(gen_d(r), L.b(r), "k = " + k->str());
      }
    }
    return out;
  }

  ////////////////////////////////////////////////////////////////////////////
  // Linear functionals forced to vanish on every solution (g >= 2, m >= 4)
  ////////////////////////////////////////////////////////////////////////////

  struct NamedFunctional {
    std::string name;
    IntVector   coef;
  };

  inline std::vector<NamedFunctional> forced_functionals(int g, int m) {
    Ansatz const                 a = build_ansatz(g, m);
    KernelLayout const           L = a.layout();
    std::vector<NamedFunctional> out;
    auto single = [&](std::size_t u) {
      IntVector c(a.unknowns(), Integer(0));
      c[u] = 1;
      out.push_back({a.unknown_name(u), std::move(c)});
    };
    for (int i = 1; i <= m - 1; ++i) {
      for (int s = 1; s <= g; ++s) {
        single(a.unknown(tau(i), L.a(s)));
        single(a.unknown(tau(i), L.b(s)));
      }
    }
    for (int i = 1; i <= m - 2; ++i) {
      for (int j = 1; j <= m - 1; ++j) {
        if (j != i && j != i + 1) {
          single(a.unknown(tau(i), L.z(j)));
        }
      }
    }
    for (int r = 1; r <= g; ++r) {
      for (int s = 1; s <= g; ++s) {
        single(a.unknown(gen_c(r), L.b(s)));
        single(a.unknown(gen_d(r), L.a(s)));
      }
    }
    for (int r = 1; r <= g; ++r) {
      IntVector   c(a.unknowns(), Integer(0));
      std::size_t u = a.unknown(gen_c(r), L.a(r));
      std::size_t v = a.unknown(gen_d(r), L.b(r));
      c[u]          = 1;
      c[v]          = -1;
      out.push_back({a.unknown_name(u) + " - " + a.unknown_name(v), std::move(c)});
    }
    return out;
  }

  inline Integer evaluate(IntVector const& functional, IntVector const& x) {
    Integer s(0);
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (functional[i] != 0) {
        s += functional[i] * x[i];
      }
    }
    return s;
  }

}  // namespace mixbraid
