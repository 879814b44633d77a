#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>

namespace a2t {

// 2x2 integer matrix acting on row vectors: (x, y) * M.
// Stored as displayed: [[m00, m01], [m10, m11]].
struct UniModularMatrix {
  std::int64_t m00 = 1, m01 = 0, m10 = 0, m11 = 1;

  std::int64_t det() const { return m00 * m11 - m01 * m10; }
  std::int64_t trace() const { return m00 + m11; }
  std::array<std::int64_t, 4> entries() const { return {m00, m01, m10, m11}; }

  friend bool operator==(const UniModularMatrix&, const UniModularMatrix&) = default;
  friend auto operator<=>(const UniModularMatrix&, const UniModularMatrix&) = default;
};

// Throws DomainError("NotUnimodular") when det is not +-1.
UniModularMatrix make_matrix(std::int64_t m00, std::int64_t m01, std::int64_t m10,
                             std::int64_t m11);

UniModularMatrix identity();
UniModularMatrix multiply(const UniModularMatrix& m, const UniModularMatrix& n);
UniModularMatrix inverse(const UniModularMatrix& m);
UniModularMatrix power(const UniModularMatrix& m, int k);
std::string to_string(const UniModularMatrix& m);

std::optional<int> order(const UniModularMatrix& m);

enum class ConjugatorPolicy { SpecialOnly, General };

ConjugatorPolicy parse_policy(const std::string& s);
std::string policy_name(ConjugatorPolicy p);

inline constexpr int kDefaultBound = 10;

// Conjugator B with N = B M B^-1, |entries| <= bound, minimal by (max norm, lex).
std::optional<UniModularMatrix> is_similar(const UniModularMatrix& m, const UniModularMatrix& n,
                                           ConjugatorPolicy policy = ConjugatorPolicy::SpecialOnly,
                                           int bound = kDefaultBound);

enum class PeriodicClass { Identity, A1, A2, A3, A4, A5, A6, A7, NotFiniteOrder };

std::string class_name(PeriodicClass c);

// j in 1..7.
UniModularMatrix normal_form(int j);
PeriodicClass class_of_index(int j);

struct Classification {
  PeriodicClass tag = PeriodicClass::NotFiniteOrder;
  std::optional<UniModularMatrix> conjugator;
};

Classification classify(const UniModularMatrix& m,
                        ConjugatorPolicy policy = ConjugatorPolicy::SpecialOnly,
                        int bound = kDefaultBound);

PeriodicClass classify_periodic(const UniModularMatrix& m,
                                ConjugatorPolicy policy = ConjugatorPolicy::SpecialOnly,
                                int bound = kDefaultBound);

const UniModularMatrix& a2_matrix();

}  // namespace a2t
