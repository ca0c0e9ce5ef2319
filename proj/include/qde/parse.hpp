#ifndef QDE_PARSE_HPP
#define QDE_PARSE_HPP

#include <cctype>
#include <cstddef>
#include <string>
#include <string_view>

#include "qde/error.hpp"
#include "qde/integer.hpp"
#include "qde/quadratic.hpp"

namespace qde {

namespace detail {

// Recursive-descent reader for the theta grammar in docs/grammar.md.
class theta_reader
{
    std::string_view text_;
    std::size_t pos_ = 0;

    void skip_ws()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    [[noreturn]] void fail(std::string const & what) const
    {
        throw parse_error("syntax error: " + what, pos_);
    }

    bool peek(char ch)
    {
        skip_ws();
        return pos_ < text_.size() && text_[pos_] == ch;
    }

    bool accept(char ch)
    {
        if (peek(ch)) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char ch)
    {
        if (!accept(ch))
            fail(std::string("expected '") + ch + "'");
    }

    bool peek_digit()
    {
        skip_ws();
        return pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]));
    }

    bool peek_sqrt()
    {
        skip_ws();
        return text_.substr(pos_, 4) == "sqrt";
    }

    Integer uint()
    {
        if (!peek_digit())
            fail("expected unsigned integer");
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
        return Integer(std::string(text_.substr(start, pos_ - start)));
    }

    Integer radical()
    {
        if (!peek_sqrt())
            fail("expected 'sqrt'");
        pos_ += 4;
        expect('(');
        std::size_t at = (skip_ws(), pos_);
        Integer d = uint();
        expect(')');
        if (d < 2)
            throw parse_error("radicand must be >= 2", at);
        return d;
    }

    // [coef ["*"]] sqrt(D) ; returns coefficient, sets D.
    Integer sqrt_term(Integer & D)
    {
        Integer coef = 1;
        if (peek_digit()) {
            coef = uint();
            accept('*');
        }
        D = radical();
        return coef;
    }

    // sum := ["-"] sqrt_term | int ("+"|"-") sqrt_term
    void sum(Integer & a, Integer & b, Integer & D)
    {
        if (accept('-')) {
            if (peek_sqrt() || peek_digit_then_sqrt()) {
                a = 0;
                b = -sqrt_term(D);
                return;
            }
            a = -uint();
        } else if (accept('+')) {
            if (peek_sqrt() || peek_digit_then_sqrt()) {
                a = 0;
                b = sqrt_term(D);
                return;
            }
            a = uint();
        } else if (peek_sqrt() || peek_digit_then_sqrt()) {
            a = 0;
            b = sqrt_term(D);
            return;
        } else {
            a = uint();
        }
        if (accept('+'))
            b = sqrt_term(D);
        else if (accept('-'))
            b = -sqrt_term(D);
        else
            fail("expected '+' or '-' before the sqrt term");
    }

    bool peek_digit_then_sqrt()
    {
        if (!peek_digit())
            return false;
        std::size_t p = pos_;
        while (p < text_.size() && std::isdigit(static_cast<unsigned char>(text_[p])))
            ++p;
        while (p < text_.size() && std::isspace(static_cast<unsigned char>(text_[p])))
            ++p;
        if (p < text_.size() && text_[p] == '*')
            return true;
        return text_.substr(p, 4) == "sqrt";
    }

  public:
    explicit theta_reader(std::string_view text) : text_(text) {}

    QuadraticIrrational read()
    {
        Integer a, b, c = 1, D;
        if (accept('(')) {
            sum(a, b, D);
            expect(')');
            expect('/');
            std::size_t at = (skip_ws(), pos_);
            c = uint();
            if (c == 0)
                throw parse_error("zero denominator", at);
        } else {
            sum(a, b, D);
        }
        skip_ws();
        if (pos_ != text_.size())
            fail("unexpected trailing input");
        if (is_square(D))
            throw domain_error("sqrt(" + D.str() + ") is a perfect square; value is rational");
        if (b == 0)
            throw domain_error("coefficient of the sqrt term is zero; value is rational");
        return QuadraticIrrational(a, b, c, D);
    }
};

} // namespace detail

/// Parses `(A + B*sqrt(D))/C`, `A + B*sqrt(D)`, `sqrt(D)` and their signed
/// variants into canonical form. Square factors of D move into B.
inline QuadraticIrrational parse_theta(std::string_view text)
{
    return detail::theta_reader(text).read();
}

} // namespace qde

#endif // QDE_PARSE_HPP
