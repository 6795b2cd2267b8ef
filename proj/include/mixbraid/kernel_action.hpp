#pragma once

// The abelianized kernel K(g,m) = Z^{2g+(m-1)} x Z_2, the conjugation action
// of the coset letters t_i, c_r, d_r on it, and the (coset word, kernel)
// normal form of words in the quotient of the mixed braid group.

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "json.hpp"

#include "intlinalg.hpp"
#include "presentations.hpp"
#include "words.hpp"

namespace mixbraid {

  // Coordinates (a_1..a_g, b_1..b_g, z_1..z_{m-1}); sigma is kept apart.
  struct KernelLayout {
    int g = 1;
    int m = 1;

    KernelLayout() = default;
    KernelLayout(int g_, int m_) : g(g_), m(m_) {
      detail::require(g >= 1, "g", g);
      detail::require(m >= 1, "m", m);
    }

    std::size_t dim() const noexcept { return static_cast<std::size_t>(2 * g + m - 1); }
    std::size_t a(int r) const noexcept { return static_cast<std::size_t>(r - 1); }
    std::size_t b(int r) const noexcept { return static_cast<std::size_t>(g + r - 1); }
    std::size_t z(int j) const noexcept { return static_cast<std::size_t>(2 * g + j - 1); }

    // "a1", "b2", "z3"
    std::string coordinate_name(std::size_t i) const {
      int const k = static_cast<int>(i);
      if (k < g) {
        return "a" + std::to_string(k + 1);
      }
      if (k < 2 * g) {
        return "b" + std::to_string(k - g + 1);
      }
      return "z" + std::to_string(k - 2 * g + 1);
    }

    bool operator==(KernelLayout const&) const = default;
  };

  struct ExponentVector {
    KernelLayout           layout;
    std::vector<long long> free;
    int                    sigma = 0;  // 0 or 1

    ExponentVector() = default;
    explicit ExponentVector(KernelLayout l) : layout(l), free(l.dim(), 0) {}

    static ExponentVector zero(int g, int m) { return ExponentVector(KernelLayout(g, m)); }

    // Unit vector of a kernel generator; z_m folds to -(z_1+...+z_{m-1}).
    static ExponentVector unit(Generator x, int g, int m) {
      ExponentVector v = zero(g, m);
      v.add(x, 1);
      return v;
    }

    void add(Generator x, long long k) {
      switch (x.family) {
        case Family::Sigma: sigma = static_cast<int>(((sigma + k) % 2 + 2) % 2); return;
        case Family::A: free[layout.a(x.index)] += k; return;
        case Family::B: free[layout.b(x.index)] += k; return;
        case Family::Z:
          if (x.index == layout.m) {
            for (int j = 1; j <= layout.m - 1; ++j) {
              free[layout.z(j)] -= k;
            }
          } else {
            free[layout.z(x.index)] += k;
          }
          return;
        default: throw word_error("not a kernel letter: " + x.to_string());
      }
    }

    ExponentVector& operator+=(ExponentVector const& o) {
      for (std::size_t i = 0; i < free.size(); ++i) {
        free[i] += o.free[i];
      }
      sigma ^= o.sigma;
      return *this;
    }
    friend ExponentVector operator+(ExponentVector x, ExponentVector const& y) {
      x += y;
      return x;
    }
    ExponentVector operator-() const {
      ExponentVector out = *this;
      for (auto& x : out.free) {
        x = -x;
      }
      return out;
    }
    ExponentVector& operator*=(long long k) {
      for (auto& x : free) {
        x *= k;
      }
      sigma = static_cast<int>(((sigma * k) % 2 + 2) % 2);
      return *this;
    }

    bool is_zero() const {
      return sigma == 0
             && std::all_of(free.begin(), free.end(), [](long long x) { return x == 0; });
    }

    long long a(int r) const { return free[layout.a(r)]; }
    long long b(int r) const { return free[layout.b(r)]; }
    long long z(int j) const { return free[layout.z(j)]; }

    bool operator==(ExponentVector const&) const = default;
  };

  inline nlohmann::json to_json(ExponentVector const& v) {
    nlohmann::json j;
    std::vector<long long> a, b, z;
    for (int r = 1; r <= v.layout.g; ++r) {
      a.push_back(v.a(r));
      b.push_back(v.b(r));
    }
    for (int k = 1; k <= v.layout.m - 1; ++k) {
      z.push_back(v.z(k));
    }
    j["a"]     = a;
    j["b"]     = b;
    j["z"]     = z;
    j["sigma"] = v.sigma;
    return j;
  }

  namespace detail {

    inline void check_kernel_letter(Generator x, int g, int n, int m) {
      bool ok = false;
      switch (x.family) {
        case Family::Sigma: ok = x.index == 0 || (x.index >= 1 && x.index <= n - 1); break;
        case Family::A:
        case Family::B: ok = x.index >= 1 && x.index <= g; break;
        case Family::Z: ok = x.index >= 1 && x.index <= m; break;
        default: break;
      }
      if (!ok) {
        throw word_error("letter " + x.to_string() + " is outside the kernel alphabet (g="
                         + std::to_string(g) + ", n=" + std::to_string(n)
                         + ", m=" + std::to_string(m) + ")");
      }
    }

    inline void check_coset_letter(Generator x, int g, int m) {
      bool ok = false;
      switch (x.family) {
        case Family::Tau: ok = x.index >= 1 && x.index <= m - 1; break;
        case Family::C:
        case Family::D: ok = x.index >= 1 && x.index <= g; break;
        default: break;
      }
      if (!ok) {
        throw word_error("letter " + x.to_string() + " is not a coset letter for g="
                         + std::to_string(g) + ", m=" + std::to_string(m));
      }
    }

  }  // namespace detail

  // Signed letter counts; every sigma_i pools into the sigma bit.
  inline ExponentVector abelianize(Word const& w, int g, int n, int m) {
    ExponentVector v = ExponentVector::zero(g, m);
    for (auto const& l : w) {
      detail::check_kernel_letter(l.gen, g, n, m);
      v.add(l.gen, l.sign);
    }
    return v;
  }

  ////////////////////////////////////////////////////////////////////////////
  // Action matrices
  ////////////////////////////////////////////////////////////////////////////

  // Column j is the image of basis vector j; sigma is fixed.
  struct ActionMatrix {
    Matrix<long long> M;

    struct Entry {
      std::size_t row, col;
      long long   value;
    };

    std::size_t dim() const noexcept { return M.rows(); }

    std::vector<Entry> entries() const {
      std::vector<Entry> out;
      for (std::size_t i = 0; i < M.rows(); ++i) {
        for (std::size_t j = 0; j < M.cols(); ++j) {
          if (M(i, j) != 0) {
            out.push_back({i, j, M(i, j)});
          }
        }
      }
      return out;
    }

    ExponentVector operator()(ExponentVector const& v) const {
      ExponentVector out = v;
      out.free           = M * v.free;
      return out;
    }

    // Applies the matrix to coordinates of any module type T with T += k * T.
    template <typename T>
    std::vector<T> apply(std::vector<T> const& v) const {
      std::vector<T> out(v.size());
      for (std::size_t i = 0; i < M.rows(); ++i) {
        for (std::size_t j = 0; j < M.cols(); ++j) {
          if (M(i, j) != 0) {
            out[i] += v[j] * M(i, j);
          }
        }
      }
      for (std::size_t i = M.rows(); i < v.size(); ++i) {
        out[i] = v[i];
      }
      return out;
    }

    bool operator==(ActionMatrix const&) const = default;
  };

  // Matrix of k -> x^sign k x^-sign on K(g,m).
  inline ActionMatrix action_of(Generator x, int sign, int g, int m) {
    detail::check_coset_letter(x, g, m);
    if (sign != 1 && sign != -1) {
      throw word_error("action_of: sign must be +1 or -1");
    }
    KernelLayout      L(g, m);
    Matrix<long long> M = Matrix<long long>::identity(L.dim());
    switch (x.family) {
      case Family::C:
        // c_r b_r c_r^-1 = z_1^-1 b_r
        if (m >= 2) {
          M(L.z(1), L.b(x.index)) = -sign;
        }
        break;
      case Family::D:
        // d_r a_r d_r^-1 = z_1 a_r
        if (m >= 2) {
          M(L.z(1), L.a(x.index)) = sign;
        }
        break;
      case Family::Tau: {
        // both cases are involutions, so sign does not matter
        int const i = x.index;
        if (i <= m - 2) {
          M(L.z(i), L.z(i))         = 0;
          M(L.z(i + 1), L.z(i + 1)) = 0;
          M(L.z(i + 1), L.z(i))     = 1;
          M(L.z(i), L.z(i + 1))     = 1;
        } else {
          // z_{m-1} -> z_m = -(z_1 + ... + z_{m-1})
          for (int k = 1; k <= m - 1; ++k) {
            M(L.z(k), L.z(m - 1)) = -1;
          }
        }
        break;
      }
      default: break;
    }
    return {std::move(M)};
  }

  ////////////////////////////////////////////////////////////////////////////
  // Normal form
  ////////////////////////////////////////////////////////////////////////////

  // The element coset * kernel.
  struct NormalForm {
    Word           coset;
    ExponentVector kernel;

    bool operator==(NormalForm const&) const = default;
  };

  // Moves a kernel element rightwards past a coset word: K w = w (w^-1 K w).
  inline ExponentVector push_past(ExponentVector k, Word const& coset, int g, int m) {
    for (auto const& l : coset) {
      k = action_of(l.gen, -l.sign, g, m)(k);
    }
    return k;
  }

  inline NormalForm normalize(Word const& w, int g, int n, int m) {
    NormalForm nf{Word(), ExponentVector::zero(g, m)};
    for (auto const& l : w) {
      if (is_coset_family(l.gen.family)) {
        detail::check_coset_letter(l.gen, g, m);
        nf.kernel = action_of(l.gen, -l.sign, g, m)(nf.kernel);
        nf.coset.push_back(l);
      } else {
        detail::check_kernel_letter(l.gen, g, n, m);
        nf.kernel.add(l.gen, l.sign);
      }
    }
    return nf;
  }

  // (C1 K1)(C2 K2) = C1 C2 (C2^-1 K1 C2 + K2)
  inline NormalForm combine(NormalForm const& x, NormalForm const& y) {
    int const g = x.kernel.layout.g, m = x.kernel.layout.m;
    if (!(x.kernel.layout == y.kernel.layout)) {
      throw word_error("combine: kernel layouts differ");
    }
    return {x.coset * y.coset, push_past(x.kernel, y.coset, g, m) + y.kernel};
  }

  inline NormalForm operator*(NormalForm const& x, NormalForm const& y) {
    return combine(x, y);
  }

  // Kernel value of a lifted closed relator in the quotient group.
  inline ExponentVector kernel_correction(std::string_view family,
                                          Word const&      relator,
                                          int              g,
                                          int              n,
                                          int              m) {
    (void) relator;
    static constexpr std::string_view exact[]
        = {"BR-bar", "R1-bar", "R2-bar", "R3-bar", "R4-bar"};
    ExponentVector v = ExponentVector::zero(g, m);
    if (family == "SR-bar") {
      v.add(gen_z(1), -static_cast<long long>(n));
      return v;
    }
    if (std::find(std::begin(exact), std::end(exact), family) != std::end(exact)) {
      return v;
    }
    throw word_error("kernel_correction: unknown relator family \"" + std::string(family)
                     + "\"");
  }

  // Exponent-sum matrix of a presentation: one row per relator, one column
  // per generator in alphabet order.
  inline IntMatrix relation_matrix(Presentation const& p) {
    auto const& gens = p.alphabet.generators();
    IntMatrix   M(p.relators.size(), gens.size());
    for (std::size_t i = 0; i < p.relators.size(); ++i) {
      for (auto const& l : p.relators[i].word) {
        auto it = std::find(gens.begin(), gens.end(), l.gen);
        if (it == gens.end()) {
          throw word_error("relator uses " + l.gen.to_string() + ", which is not a generator");
        }
        M(i, static_cast<std::size_t>(it - gens.begin())) += l.sign;
      }
    }
    return M;
  }

  // The abelianization of a presented group as free rank plus torsion.
  inline InvariantFactors<Integer> abelian_invariants(Presentation const& p) {
    return invariant_factors(relation_matrix(p), p.alphabet.size());
  }

}  // namespace mixbraid
