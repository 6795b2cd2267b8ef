#pragma once

// Exact integer linear algebra: Smith normal form with unimodular witnesses,
// invariant factors of finitely presented abelian groups, and solvability of
// integer systems with some rows taken modulo 2 and right-hand sides affine
// in one integer parameter.

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "json.hpp"

namespace mixbraid {

  using Integer = boost::multiprecision::cpp_int;

  class linalg_error : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
  };

  template <typename T>
  class Matrix {
   public:
    using value_type = T;

    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}

    Matrix(std::initializer_list<std::initializer_list<T>> init) {
      rows_ = init.size();
      cols_ = rows_ == 0 ? 0 : init.begin()->size();
      data_.reserve(rows_ * cols_);
      for (auto const& row : init) {
        if (row.size() != cols_) {
          throw linalg_error("ragged matrix initializer");
        }
        data_.insert(data_.end(), row.begin(), row.end());
      }
    }

    static Matrix identity(std::size_t n) {
      Matrix I(n, n);
      for (std::size_t i = 0; i < n; ++i) {
        I(i, i) = T(1);
      }
      return I;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    T&       operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    T const& operator()(std::size_t i, std::size_t j) const {
      return data_[i * cols_ + j];
    }

    bool operator==(Matrix const&) const = default;

    friend Matrix operator*(Matrix const& x, Matrix const& y) {
      if (x.cols_ != y.rows_) {
        throw linalg_error("matrix product: dimension mismatch");
      }
      Matrix out(x.rows_, y.cols_);
      for (std::size_t i = 0; i < x.rows_; ++i) {
        for (std::size_t k = 0; k < x.cols_; ++k) {
          T const& a = x(i, k);
          if (a == 0) {
            continue;
          }
          for (std::size_t j = 0; j < y.cols_; ++j) {
            out(i, j) += a * y(k, j);
          }
        }
      }
      return out;
    }

    std::vector<T> operator*(std::vector<T> const& v) const {
      if (v.size() != cols_) {
        throw linalg_error("matrix-vector product: dimension mismatch");
      }
      std::vector<T> out(rows_, T(0));
      for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) {
          if ((*this)(i, j) != 0) {
            out[i] += (*this)(i, j) * v[j];
          }
        }
      }
      return out;
    }

    Matrix transpose() const {
      Matrix t(cols_, rows_);
      for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) {
          t(j, i) = (*this)(i, j);
        }
      }
      return t;
    }

    // row ops
    void swap_rows(std::size_t a, std::size_t b) {
      if (a == b) {
        return;
      }
      for (std::size_t j = 0; j < cols_; ++j) {
        std::swap((*this)(a, j), (*this)(b, j));
      }
    }
    // row[dst] += q * row[src]
    void add_row(std::size_t dst, std::size_t src, T const& q) {
      for (std::size_t j = 0; j < cols_; ++j) {
        if ((*this)(src, j) != 0) {
          (*this)(dst, j) += q * (*this)(src, j);
        }
      }
    }
    void negate_row(std::size_t a) {
      for (std::size_t j = 0; j < cols_; ++j) {
        (*this)(a, j) = -(*this)(a, j);
      }
    }
    void swap_cols(std::size_t a, std::size_t b) {
      if (a == b) {
        return;
      }
      for (std::size_t i = 0; i < rows_; ++i) {
        std::swap((*this)(i, a), (*this)(i, b));
      }
    }
    // col[dst] += q * col[src]
    void add_col(std::size_t dst, std::size_t src, T const& q) {
      for (std::size_t i = 0; i < rows_; ++i) {
        if ((*this)(i, src) != 0) {
          (*this)(i, dst) += q * (*this)(i, src);
        }
      }
    }

   private:
    std::size_t    rows_ = 0;
    std::size_t    cols_ = 0;
    std::vector<T> data_;
  };

  using IntMatrix = Matrix<Integer>;
  using IntVector = std::vector<Integer>;

  template <typename T>
  T abs_value(T const& x) {
    return x < 0 ? T(-x) : x;
  }

  template <typename T>
  T gcd_value(T a, T b) {
    a = abs_value(a);
    b = abs_value(b);
    while (b != 0) {
      T r = a % b;
      a   = std::move(b);
      b   = std::move(r);
    }
    return a;
  }

  // U * A * V == D, U and V unimodular, D diagonal with d_1 | d_2 | ... and
  // every d_i >= 0. `rank` is the number of nonzero diagonal entries.
  template <typename T>
  struct SmithDecomposition {
    Matrix<T>   U;
    Matrix<T>   D;
    Matrix<T>   V;
    std::size_t rank = 0;

    std::vector<T> diagonal() const {
      std::vector<T> d;
      for (std::size_t i = 0; i < std::min(D.rows(), D.cols()); ++i) {
        d.push_back(D(i, i));
      }
      return d;
    }
  };

  template <typename T>
  SmithDecomposition<T> smith(Matrix<T> const& A) {
    std::size_t const r = A.rows(), c = A.cols();
    Matrix<T>         D = A;
    Matrix<T>         U = Matrix<T>::identity(r);
    Matrix<T>         V = Matrix<T>::identity(c);
    std::size_t       t = 0;

    for (; t < std::min(r, c); ++t) {
      while (true) {
        // smallest nonzero entry of the trailing block becomes the pivot
        std::size_t pi = r, pj = c;
        T           best(0);
        for (std::size_t i = t; i < r; ++i) {
          for (std::size_t j = t; j < c; ++j) {
            if (D(i, j) != 0) {
              T v = abs_value(D(i, j));
              if (pi == r || v < best) {
                best = v;
                pi   = i;
                pj   = j;
                if (best == 1) {
                  break;
                }
              }
            }
          }
          if (pi != r && best == 1) {
            break;
          }
        }
        if (pi == r) {
          goto done;
        }
        D.swap_rows(t, pi);
        U.swap_rows(t, pi);
        D.swap_cols(t, pj);
        V.swap_cols(t, pj);

        bool clean = true;
        for (std::size_t i = t + 1; i < r; ++i) {
          if (D(i, t) != 0) {
            T q = D(i, t) / D(t, t);
            if (q != 0) {
              D.add_row(i, t, T(-q));
              U.add_row(i, t, T(-q));
            }
            if (D(i, t) != 0) {
              clean = false;
            }
          }
        }
        for (std::size_t j = t + 1; j < c; ++j) {
          if (D(t, j) != 0) {
            T q = D(t, j) / D(t, t);
            if (q != 0) {
              D.add_col(j, t, T(-q));
              V.add_col(j, t, T(-q));
            }
            if (D(t, j) != 0) {
              clean = false;
            }
          }
        }
        if (!clean) {
          continue;
        }
        // divisibility: fold an offending row into the pivot row and retry
        std::size_t bad = r;
        for (std::size_t i = t + 1; i < r && bad == r; ++i) {
          for (std::size_t j = t + 1; j < c; ++j) {
            if (D(i, j) % D(t, t) != 0) {
              bad = i;
              break;
            }
          }
        }
        if (bad == r) {
          break;
        }
        D.add_row(t, bad, T(1));
        U.add_row(t, bad, T(1));
      }
      if (D(t, t) < 0) {
        D.negate_row(t);
        U.negate_row(t);
      }
    }
  done:
    return {std::move(U), std::move(D), std::move(V), t};
  }

  template <typename T>
  struct InvariantFactors {
    std::size_t    free_rank = 0;
    std::vector<T> torsion;  // entries > 1, in divisibility order

    bool operator==(InvariantFactors const&) const = default;
  };

  // The abelian group Z^ambient / (row span of relation_matrix).
  template <typename T>
  InvariantFactors<T> invariant_factors(Matrix<T> const& relation_matrix,
                                        std::size_t      ambient) {
    if (relation_matrix.rows() > 0 && relation_matrix.cols() != ambient) {
      throw linalg_error("invariant_factors: relation matrix has "
                         + std::to_string(relation_matrix.cols())
                         + " columns, ambient rank is "
                         + std::to_string(ambient));
    }
    InvariantFactors<T> out;
    if (relation_matrix.rows() == 0) {
      out.free_rank = ambient;
      return out;
    }
    auto snf       = smith(relation_matrix);
    out.free_rank  = ambient - snf.rank;
    for (std::size_t i = 0; i < snf.rank; ++i) {
      if (snf.D(i, i) > 1) {
        out.torsion.push_back(snf.D(i, i));
      }
    }
    return out;
  }

  // Integer solutions of M y = b: particular + Z-span(kernel).
  template <typename T>
  struct AffineLattice {
    std::vector<T>              particular;
    std::vector<std::vector<T>> kernel;
  };

  namespace detail {

    // Integer row echelon form of [M | b] by unimodular row operations.
    // Zero rows are dropped; returns false if some zero row has b != 0.
    template <typename T>
    bool row_echelon(Matrix<T>& M, std::vector<T>& b) {
      std::size_t const r = M.rows(), c = M.cols();
      Matrix<T>         aug(r, c + 1);
      for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < c; ++j) {
          aug(i, j) = M(i, j);
        }
        aug(i, c) = b[i];
      }
      std::size_t row = 0;
      for (std::size_t col = 0; col < c && row < r; ++col) {
        while (true) {
          std::size_t pivot = r;
          for (std::size_t i = row; i < r; ++i) {
            if (aug(i, col) != 0
                && (pivot == r || abs_value(aug(i, col)) < abs_value(aug(pivot, col)))) {
              pivot = i;
            }
          }
          if (pivot == r) {
            break;
          }
          aug.swap_rows(row, pivot);
          bool clean = true;
          for (std::size_t i = row + 1; i < r; ++i) {
            if (aug(i, col) != 0) {
              T q = aug(i, col) / aug(row, col);
              aug.add_row(i, row, T(-q));
              if (aug(i, col) != 0) {
                clean = false;
              }
            }
          }
          if (clean) {
            ++row;
            break;
          }
        }
      }
      for (std::size_t i = row; i < r; ++i) {
        if (aug(i, c) != 0) {
          return false;
        }
      }
      Matrix<T> H(row, c);
      b.assign(row, T(0));
      for (std::size_t i = 0; i < row; ++i) {
        for (std::size_t j = 0; j < c; ++j) {
          H(i, j) = aug(i, j);
        }
        b[i] = aug(i, c);
      }
      M = std::move(H);
      return true;
    }

  }  // namespace detail

  // All integer solutions of M y = b, or nullopt if there are none.
  template <typename T>
  std::optional<AffineLattice<T>> solve_integer(Matrix<T> M, std::vector<T> b) {
    if (b.size() != M.rows()) {
      throw linalg_error("solve_integer: rhs length mismatch");
    }
    std::size_t const c = M.cols();
    if (!detail::row_echelon(M, b)) {
      return std::nullopt;
    }
    AffineLattice<T> out;
    out.particular.assign(c, T(0));
    if (M.rows() == 0) {
      for (std::size_t j = 0; j < c; ++j) {
        std::vector<T> e(c, T(0));
        e[j] = T(1);
        out.kernel.push_back(std::move(e));
      }
      return out;
    }
    auto           snf = smith(M);
    std::vector<T> ub  = snf.U * b;
    std::vector<T> t(c, T(0));
    for (std::size_t i = 0; i < ub.size(); ++i) {
      if (i < snf.rank) {
        if (ub[i] % snf.D(i, i) != 0) {
          return std::nullopt;
        }
        t[i] = ub[i] / snf.D(i, i);
      } else if (ub[i] != 0) {
        return std::nullopt;
      }
    }
    out.particular = snf.V * t;
    for (std::size_t j = snf.rank; j < c; ++j) {
      std::vector<T> col(c);
      for (std::size_t i = 0; i < c; ++i) {
        col[i] = snf.V(i, j);
      }
      out.kernel.push_back(std::move(col));
    }
    return out;
  }

  // Basis (in row Hermite form) of the lattice spanned by `generators`.
  template <typename T>
  std::vector<std::vector<T>> lattice_basis(std::vector<std::vector<T>> const& generators,
                                            std::size_t dim) {
    Matrix<T> M(generators.size(), dim);
    for (std::size_t i = 0; i < generators.size(); ++i) {
      for (std::size_t j = 0; j < dim; ++j) {
        M(i, j) = generators[i][j];
      }
    }
    std::vector<T> zero(generators.size(), T(0));
    detail::row_echelon(M, zero);
    std::vector<std::vector<T>> out;
    for (std::size_t i = 0; i < M.rows(); ++i) {
      std::vector<T> row(dim);
      for (std::size_t j = 0; j < dim; ++j) {
        row[j] = M(i, j);
      }
      auto lead = std::find_if(row.begin(), row.end(), [](T const& x) { return x != 0; });
      if (lead != row.end() && *lead < 0) {
        for (auto& x : row) {
          x = -x;
        }
      }
      out.push_back(std::move(row));
    }
    return out;
  }

  ////////////////////////////////////////////////////////////////////////////
  // Parametric systems
  ////////////////////////////////////////////////////////////////////////////

  // A x = b0 + n * b1, where rows with row_modulus 2 hold modulo 2 and rows
  // with row_modulus 0 hold over Z.
  struct ParametricSystem {
    IntMatrix        A;
    IntVector        b0;
    IntVector        b1;
    std::vector<int> row_modulus;

    std::size_t rows() const noexcept { return A.rows(); }
    std::size_t unknowns() const noexcept { return A.cols(); }

    void validate() const {
      if (b0.size() != A.rows() || b1.size() != A.rows()
          || row_modulus.size() != A.rows()) {
        throw linalg_error("parametric system: dimension mismatch");
      }
      for (int mod : row_modulus) {
        if (mod != 0 && mod != 2) {
          throw linalg_error("parametric system: row modulus must be 0 or 2");
        }
      }
    }

    IntVector rhs(Integer const& n) const {
      IntVector out(b0.size());
      for (std::size_t i = 0; i < b0.size(); ++i) {
        out[i] = b0[i] + n * b1[i];
      }
      return out;
    }

    // Indices of rows violated by x at parameter n.
    std::vector<std::size_t> violations(IntVector const& x, Integer const& n) const {
      if (x.size() != A.cols()) {
        throw linalg_error("parametric system: assignment has "
                           + std::to_string(x.size()) + " entries, expected "
                           + std::to_string(A.cols()));
      }
      std::vector<std::size_t> bad;
      IntVector                lhs = A * x;
      IntVector                r   = rhs(n);
      for (std::size_t i = 0; i < lhs.size(); ++i) {
        Integer diff = lhs[i] - r[i];
        if (row_modulus[i] == 2 ? (diff % 2 != 0) : (diff != 0)) {
          bad.push_back(i);
        }
      }
      return bad;
    }

    bool satisfied_by(IntVector const& x, Integer const& n) const {
      return violations(x, n).empty();
    }
  };

  // {n : S is solvable at n} = offset + modulus * Z (modulus 0: the single
  // value `offset`), or empty.
  struct ParameterAnswer {
    enum class Kind { empty, lattice };
    Kind    kind    = Kind::empty;
    Integer modulus = 0;
    Integer offset  = 0;

    bool is_empty() const noexcept { return kind == Kind::empty; }
    bool all() const noexcept { return kind == Kind::lattice && modulus == 1; }

    bool contains(Integer const& n) const {
      if (kind == Kind::empty) {
        return false;
      }
      if (modulus == 0) {
        return n == offset;
      }
      Integer d = (n - offset) % modulus;
      return d == 0;
    }
  };

  namespace detail {

    // [A | 2 e_i for each mod-2 row i]; slack unknowns follow the originals.
    inline IntMatrix with_parity_slack(ParametricSystem const& S, std::size_t extra_cols) {
      std::size_t slack = 0;
      for (int mod : S.row_modulus) {
        slack += (mod == 2);
      }
      IntMatrix   M(S.rows(), S.unknowns() + slack + extra_cols);
      std::size_t k = S.unknowns();
      for (std::size_t i = 0; i < S.rows(); ++i) {
        for (std::size_t j = 0; j < S.unknowns(); ++j) {
          M(i, j) = S.A(i, j);
        }
        if (S.row_modulus[i] == 2) {
          M(i, k++) = 2;
        }
      }
      return M;
    }

  }  // namespace detail

  inline ParameterAnswer feasible_parameter_set(ParametricSystem const& S) {
    S.validate();
    IntMatrix         M     = detail::with_parity_slack(S, 1);
    std::size_t const ncol  = M.cols() - 1;
    for (std::size_t i = 0; i < S.rows(); ++i) {
      M(i, ncol) = -S.b1[i];
    }
    auto sol = solve_integer(std::move(M), S.b0);
    ParameterAnswer out;
    if (!sol) {
      return out;
    }
    out.kind = ParameterAnswer::Kind::lattice;
    Integer d(0);
    for (auto const& k : sol->kernel) {
      d = gcd_value(d, k[ncol]);
    }
    out.modulus = d;
    out.offset  = sol->particular[ncol];
    if (d != 0) {
      out.offset %= d;
      if (out.offset < 0) {
        out.offset += d;
      }
    }
    return out;
  }

  inline std::optional<IntVector> solve_witness(ParametricSystem const& S,
                                                Integer const&          n) {
    S.validate();
    auto sol = solve_integer(detail::with_parity_slack(S, 0), S.rhs(n));
    if (!sol) {
      return std::nullopt;
    }
    IntVector x(sol->particular.begin(),
                sol->particular.begin() + static_cast<std::ptrdiff_t>(S.unknowns()));
    return x;
  }

  struct SolutionSpace {
    IntVector              particular;
    std::vector<IntVector> lattice_basis;
  };

  // Solutions over Z of S at n are particular + Z-span(lattice_basis).
  inline SolutionSpace solution_space(ParametricSystem const& S, Integer const& n) {
    S.validate();
    auto sol = solve_integer(detail::with_parity_slack(S, 0), S.rhs(n));
    if (!sol) {
      throw linalg_error("solution_space: system is infeasible at n = " + n.str());
    }
    auto const     k = static_cast<std::ptrdiff_t>(S.unknowns());
    SolutionSpace  out;
    out.particular.assign(sol->particular.begin(), sol->particular.begin() + k);
    std::vector<IntVector> gens;
    for (auto const& v : sol->kernel) {
      IntVector p(v.begin(), v.begin() + k);
      if (std::any_of(p.begin(), p.end(), [](Integer const& x) { return x != 0; })) {
        gens.push_back(std::move(p));
      }
    }
    out.lattice_basis = lattice_basis(gens, S.unknowns());
    return out;
  }

  ////////////////////////////////////////////////////////////////////////////
  // debug dumps
  ////////////////////////////////////////////////////////////////////////////

  inline nlohmann::json integer_to_json(Integer const& x) {
    if (x >= std::numeric_limits<long long>::min()
        && x <= std::numeric_limits<long long>::max()) {
      return static_cast<long long>(x);
    }
    return x.str();
  }

  inline nlohmann::json to_json(IntMatrix const& M) {
    auto out = nlohmann::json::array();
    for (std::size_t i = 0; i < M.rows(); ++i) {
      auto row = nlohmann::json::array();
      for (std::size_t j = 0; j < M.cols(); ++j) {
        row.push_back(integer_to_json(M(i, j)));
      }
      out.push_back(std::move(row));
    }
    return out;
  }

}  // namespace mixbraid
