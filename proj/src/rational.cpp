#include "packlab/rational.hpp"

#include "packlab/errors.hpp"

#include <algorithm>
#include <cctype>

namespace packlab {

namespace {

std::string normalize_minus(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    for (std::size_t i = 0; i < text.size(); ++i) {
        // U+2212 MINUS SIGN is E2 88 92 in UTF-8
        if (i + 2 < text.size() && static_cast<unsigned char>(text[i]) == 0xE2 &&
            static_cast<unsigned char>(text[i + 1]) == 0x88 && static_cast<unsigned char>(text[i + 2]) == 0x92) {
            out.push_back('-');
            i += 2;
            continue;
        }
        if (!std::isspace(static_cast<unsigned char>(text[i]))) out.push_back(text[i]);
    }
    return out;
}

Rational parse_decimal(const std::string& s, const std::string& original) {
    std::size_t pos = 0;
    bool negative = false;
    if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
        negative = s[pos] == '-';
        ++pos;
    }
    std::string digits;
    long scale = 0;
    bool seen_dot = false, any_digit = false;
    for (; pos < s.size(); ++pos) {
        char c = s[pos];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            digits.push_back(c);
            any_digit = true;
            if (seen_dot) --scale;
        } else if (c == '.' && !seen_dot) {
            seen_dot = true;
        } else {
            break;
        }
    }
    if (!any_digit) throw ConfigError("cannot parse number '" + original + "'");
    if (pos < s.size()) {
        if (s[pos] != 'e' && s[pos] != 'E') throw ConfigError("cannot parse number '" + original + "'");
        ++pos;
        std::string exp = s.substr(pos);
        if (exp.empty()) throw ConfigError("cannot parse number '" + original + "'");
        std::size_t used = 0;
        long e = 0;
        try {
            e = std::stol(exp, &used);
        } catch (const std::exception&) {
            throw ConfigError("cannot parse exponent in '" + original + "'");
        }
        if (used != exp.size()) throw ConfigError("cannot parse exponent in '" + original + "'");
        scale += e;
    }
    if (scale > 100000 || scale < -100000) throw ConfigError("exponent out of range in '" + original + "'");
    Integer mant(digits, 10);
    Integer ten_pow;
    mpz_ui_pow_ui(ten_pow.get_mpz_t(), 10, static_cast<unsigned long>(scale < 0 ? -scale : scale));
    Rational r = scale >= 0 ? Rational(mant * ten_pow) : Rational(mant, ten_pow);
    r.canonicalize();
    return negative ? Rational(-r) : r;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    std::string s = normalize_minus(text);
    if (s.empty()) throw ConfigError("empty number");
    auto slash = s.find('/');
    if (slash == std::string::npos) return parse_decimal(s, std::string(text));
    Rational num = parse_decimal(s.substr(0, slash), std::string(text));
    Rational den = parse_decimal(s.substr(slash + 1), std::string(text));
    if (den == 0) throw ConfigError("zero denominator in '" + std::string(text) + "'");
    return Rational(num / den);
}

std::vector<Rational> parse_rational_list(std::string_view text, char sep) {
    std::vector<Rational> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find(sep, start);
        if (end == std::string_view::npos) end = text.size();
        std::string_view item = text.substr(start, end - start);
        if (!normalize_minus(item).empty()) out.push_back(parse_rational(item));
        start = end + 1;
    }
    return out;
}

std::string to_string(const Rational& q) { return q.get_str(); }

std::string to_string(const ExactVector& v) {
    std::string out = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ", ";
        out += v[i].get_str();
    }
    return out + ")";
}

bool is_integer(const Rational& q) { return q.get_den() == 1; }

Integer floor_div(const Rational& q) {
    Integer out;
    mpz_fdiv_q(out.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return out;
}

bool rational_sqrt(const Rational& q, Rational& root) {
    if (q < 0) return false;
    Integer n = q.get_num(), d = q.get_den();
    if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t())) return false;
    Integer rn, rd;
    mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
    root = Rational(rn, rd);
    root.canonicalize();
    return true;
}

namespace {
inline std::uint64_t mix(std::uint64_t h, std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL + h;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}
}  // namespace

std::uint64_t hash_value(const mpz_class& z) {
    const mpz_srcptr p = z.get_mpz_t();
    std::uint64_t h = static_cast<std::uint64_t>(mpz_sgn(p)) + 3;
    std::size_t n = mpz_size(p);
    for (std::size_t i = 0; i < n; ++i) h = mix(h, static_cast<std::uint64_t>(mpz_getlimbn(p, static_cast<mp_size_t>(i))));
    return h;
}

std::uint64_t hash_value(const Rational& q) {
    return mix(hash_value(q.get_num()), hash_value(q.get_den()));
}

std::uint64_t hash_value(const ExactVector& v) {
    std::uint64_t h = v.size();
    for (const auto& x : v) h = mix(h, hash_value(x));
    return h;
}

bool lex_less(const ExactVector& a, const ExactVector& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    for (std::size_t i = 0; i < a.size(); ++i) {
        int c = cmp(a[i], b[i]);
        if (c != 0) return c < 0;
    }
    return false;
}

Rational dot(const ExactVector& a, const ExactVector& b) {
    if (a.size() != b.size()) throw DimensionError("dot: length mismatch");
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

}  // namespace packlab
