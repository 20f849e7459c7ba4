#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace packlab {

using Integer = mpz_class;
using Rational = mpq_class;
using ExactVector = std::vector<Rational>;

// Accepts "7", "-13/2", "0.25", "1e5", "2.5e-3" (and the unicode minus sign).
Rational parse_rational(std::string_view text);
std::vector<Rational> parse_rational_list(std::string_view text, char sep = ',');

std::string to_string(const Rational& q);
std::string to_string(const ExactVector& v);

bool is_integer(const Rational& q);
Integer floor_div(const Rational& q);

// Exact square root of a nonnegative rational, if it is a perfect square.
bool rational_sqrt(const Rational& q, Rational& root);

std::uint64_t hash_value(const mpz_class& z);
std::uint64_t hash_value(const Rational& q);
std::uint64_t hash_value(const ExactVector& v);

struct ExactVectorHash {
    std::size_t operator()(const ExactVector& v) const { return static_cast<std::size_t>(hash_value(v)); }
};

// Lexicographic order on exact coordinates; shorter vectors first.
bool lex_less(const ExactVector& a, const ExactVector& b);

Rational dot(const ExactVector& a, const ExactVector& b);

}  // namespace packlab
