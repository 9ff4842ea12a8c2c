#include <sidorenko/numeric.hh>

#include <cctype>

namespace sidorenko
{
    namespace
    {
        auto is_integer_literal(std::string_view s) -> bool
        {
            if (s.empty())
                return false;
            std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
            if (start == s.size())
                return false;
            for (std::size_t i = start; i < s.size(); ++i)
                if (! std::isdigit(static_cast<unsigned char>(s[i])))
                    return false;
            return true;
        }

        auto to_mpz(std::string_view s) -> mpz_class
        {
            std::string owned{s[0] == '+' ? s.substr(1) : s};
            return mpz_class{owned, 10};
        }
    }

    auto parse_rational(std::string_view text) -> Rational
    {
        auto slash = text.find('/');
        auto num_part = text.substr(0, slash);
        auto den_part = slash == std::string_view::npos ? std::string_view{"1"} : text.substr(slash + 1);

        if (! is_integer_literal(num_part) || ! is_integer_literal(den_part) || den_part[0] == '-' || den_part[0] == '+')
            throw NumericError{"malformed rational '" + std::string{text} + "', expected p/q with integer p, q"};

        mpz_class den = to_mpz(den_part);
        if (den == 0)
            throw NumericError{"zero denominator in '" + std::string{text} + "'"};

        Rational result{to_mpz(num_part), den};
        result.canonicalize();
        return result;
    }

    auto to_fraction_string(const Rational & r) -> std::string
    {
        return r.get_num().get_str() + "/" + r.get_den().get_str();
    }

    auto to_decimal_string(const BigCount & c) -> std::string
    {
        return c.get_str();
    }

    auto pow(const Rational & base, unsigned long exponent) -> Rational
    {
        mpz_class num, den;
        mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), exponent);
        mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), exponent);
        Rational result{num, den};
        result.canonicalize();
        return result;
    }

    auto pow(const BigCount & base, unsigned long exponent) -> BigCount
    {
        BigCount result;
        mpz_pow_ui(result.get_mpz_t(), base.get_mpz_t(), exponent);
        return result;
    }

    auto ceil(const Rational & r) -> BigCount
    {
        BigCount result;
        mpz_cdiv_q(result.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
        return result;
    }
}
