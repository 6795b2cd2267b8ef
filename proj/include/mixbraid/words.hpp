#pragma once

// Free words over the typed generator alphabets of surface (mixed) braid
// groups. Words are kept freely reduced at all times.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <iterator>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace mixbraid {

  class word_error : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
  };

  enum class Family : std::uint8_t { Sigma, A, B, Z, Tau, C, D };

  inline constexpr char family_char(Family f) noexcept {
    switch (f) {
      case Family::Sigma: return 's';
      case Family::A: return 'a';
      case Family::B: return 'b';
      case Family::Z: return 'z';
      case Family::Tau: return 't';
      case Family::C: return 'c';
      case Family::D: return 'd';
    }
    return '?';
  }

  inline bool family_from_char(char ch, Family& out) noexcept {
    switch (ch) {
      case 's': out = Family::Sigma; return true;
      case 'a': out = Family::A; return true;
      case 'b': out = Family::B; return true;
      case 'z': out = Family::Z; return true;
      case 't': out = Family::Tau; return true;
      case 'c': out = Family::C; return true;
      case 'd': out = Family::D; return true;
      default: return false;
    }
  }

  // Coset letters of the mixed group are those lifting generators of B_m(S_g).
  inline constexpr bool is_coset_family(Family f) noexcept {
    return f == Family::Tau || f == Family::C || f == Family::D;
  }

  // Index 0 is reserved for the pooled sigma of the abelianized kernel
  // (rendered "s"); every other symbol carries its 1-based subscript.
  struct Generator {
    Family family = Family::Sigma;
    int    index  = 1;

    constexpr auto operator<=>(Generator const&) const = default;

    std::string to_string() const {
      std::string out(1, family_char(family));
      if (index != 0) {
        out += std::to_string(index);
      }
      return out;
    }
  };

  inline constexpr Generator sigma(int i) { return {Family::Sigma, i}; }
  inline constexpr Generator pooled_sigma() { return {Family::Sigma, 0}; }
  inline constexpr Generator gen_a(int r) { return {Family::A, r}; }
  inline constexpr Generator gen_b(int r) { return {Family::B, r}; }
  inline constexpr Generator gen_z(int j) { return {Family::Z, j}; }
  inline constexpr Generator tau(int i) { return {Family::Tau, i}; }
  inline constexpr Generator gen_c(int r) { return {Family::C, r}; }
  inline constexpr Generator gen_d(int r) { return {Family::D, r}; }

  struct Letter {
    Generator gen;
    int       sign = 1;  // +1 or -1

    constexpr auto operator<=>(Letter const&) const = default;

    constexpr Letter inverse() const { return {gen, -sign}; }
    constexpr bool   cancels(Letter const& other) const {
      return gen == other.gen && sign == -other.sign;
    }
  };

  class Word {
   public:
    Word() = default;

    Word(std::initializer_list<Letter> letters) {
      for (auto const& l : letters) {
        push_back(l);
      }
    }

    template <std::input_iterator It>
    Word(It first, It last) {
      for (; first != last; ++first) {
        push_back(*first);
      }
    }

    static Word letter(Generator g, int sign = 1) {
      Word w;
      w.push_back({g, sign});
      return w;
    }

    // g^k, k may be negative or zero
    static Word power(Generator g, long k) {
      Word w;
      int  s = k < 0 ? -1 : 1;
      for (long i = 0; i < (k < 0 ? -k : k); ++i) {
        w.push_back({g, s});
      }
      return w;
    }

    // Appends one letter, cancelling against the current last letter.
    void push_back(Letter l) {
      if (l.sign != 1 && l.sign != -1) {
        throw word_error("letter sign must be +1 or -1");
      }
      if (!letters_.empty() && letters_.back().cancels(l)) {
        letters_.pop_back();
      } else {
        letters_.push_back(l);
      }
    }

    Word& operator*=(Word const& rhs) {
      for (auto const& l : rhs.letters_) {
        push_back(l);
      }
      return *this;
    }

    friend Word operator*(Word lhs, Word const& rhs) {
      lhs *= rhs;
      return lhs;
    }

    Word inverse() const {
      Word w;
      w.letters_.reserve(letters_.size());
      for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) {
        w.letters_.push_back(it->inverse());
      }
      return w;
    }

    // Replaces every letter of a generator by a word (or its inverse).
    template <typename F>
    Word substitute(F&& image) const {
      Word w;
      for (auto const& l : letters_) {
        Word img = image(l.gen);
        w *= (l.sign == 1 ? img : img.inverse());
      }
      return w;
    }

    std::vector<Letter> const& letters() const noexcept { return letters_; }
    std::size_t                size() const noexcept { return letters_.size(); }
    bool                       empty() const noexcept { return letters_.empty(); }
    auto                       begin() const noexcept { return letters_.begin(); }
    auto                       end() const noexcept { return letters_.end(); }
    Letter const& operator[](std::size_t i) const { return letters_[i]; }

    bool operator==(Word const&) const = default;

    // Signed exponent sum of one generator.
    long exponent_sum(Generator g) const {
      long s = 0;
      for (auto const& l : letters_) {
        if (l.gen == g) {
          s += l.sign;
        }
      }
      return s;
    }

    // Renders "a1 b1^-1 s^2"; runs of a repeated letter collapse to powers.
    std::string to_string() const {
      std::string out;
      std::size_t i = 0;
      while (i < letters_.size()) {
        std::size_t j = i;
        while (j < letters_.size() && letters_[j] == letters_[i]) {
          ++j;
        }
        long k = static_cast<long>(j - i) * letters_[i].sign;
        if (!out.empty()) {
          out += ' ';
        }
        out += letters_[i].gen.to_string();
        if (k != 1) {
          out += '^';
          out += std::to_string(k);
        }
        i = j;
      }
      return out;
    }

   private:
    std::vector<Letter> letters_;
  };

  inline Word concat(Word const& u, Word const& v) { return u * v; }
  inline Word invert(Word const& w) { return w.inverse(); }

  // [x, y] = x y x^-1 y^-1
  inline Word commutator(Word const& x, Word const& y) {
    return x * y * x.inverse() * y.inverse();
  }

  // Parses the text rendering: whitespace or comma separated tokens of the
  // form <family><index>[^<exponent>], e.g. "a1 b2^-1 s1^2 z3".
  inline Word parse_word(std::string_view text) {
    Word        w;
    std::size_t i = 0;
    auto        skip = [&] {
      while (i < text.size()
             && (text[i] == ' ' || text[i] == ',' || text[i] == '\t'
                 || text[i] == '\n')) {
        ++i;
      }
    };
    auto read_int = [&](bool allow_sign) -> long {
      bool neg = false;
      if (allow_sign && i < text.size() && (text[i] == '-' || text[i] == '+')) {
        neg = text[i] == '-';
        ++i;
      }
      if (i >= text.size() || text[i] < '0' || text[i] > '9') {
        throw word_error("expected a number in word \"" + std::string(text)
                         + "\"");
      }
      long v = 0;
      while (i < text.size() && text[i] >= '0' && text[i] <= '9') {
        v = v * 10 + (text[i] - '0');
        if (v > 1'000'000) {
          throw word_error("number out of range in word");
        }
        ++i;
      }
      return neg ? -v : v;
    };
    skip();
    while (i < text.size()) {
      Family f;
      if (!family_from_char(text[i], f)) {
        throw word_error("unknown generator letter '" + std::string(1, text[i])
                         + "' in word \"" + std::string(text) + "\"");
      }
      ++i;
      int index = 0;
      if (i < text.size() && text[i] >= '0' && text[i] <= '9') {
        index = static_cast<int>(read_int(false));
        if (index == 0) {
          throw word_error("generator index must be positive");
        }
      } else if (f != Family::Sigma) {
        throw word_error("generator '" + std::string(1, family_char(f))
                         + "' needs an index");
      }
      long k = 1;
      if (i < text.size() && text[i] == '^') {
        ++i;
        k = read_int(true);
      }
      w *= Word::power({f, index}, k);
      skip();
    }
    return w;
  }

  // A finite set of generators; words can be checked against it.
  class Alphabet {
   public:
    Alphabet() = default;
    explicit Alphabet(std::vector<Generator> gens) : gens_(std::move(gens)) {}

    std::vector<Generator> const& generators() const noexcept { return gens_; }
    std::size_t                   size() const noexcept { return gens_.size(); }

    bool contains(Generator g) const {
      return std::find(gens_.begin(), gens_.end(), g) != gens_.end();
    }

    bool contains(Word const& w) const {
      return std::all_of(w.begin(), w.end(), [this](Letter const& l) {
        return contains(l.gen);
      });
    }

    bool operator==(Alphabet const&) const = default;

   private:
    std::vector<Generator> gens_;
  };

  // Concatenation with the alphabet precondition enforced.
  inline Word concat(Alphabet const& alphabet, Word const& u, Word const& v) {
    if (!alphabet.contains(u) || !alphabet.contains(v)) {
      throw word_error("concat: word uses a letter outside the alphabet");
    }
    return u * v;
  }

}  // namespace mixbraid
