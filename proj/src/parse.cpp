#include "superkoszul/parse.hpp"

#include <cctype>

namespace superkoszul {

namespace {

struct Parser {
    const std::string& text;
    size_t pos = 0;
    ChartPtr chart;

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
            ++pos;
    }

    bool eat(char c) {
        skip_ws();
        if (pos < text.size() && text[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos < text.size() ? text[pos] : '\0';
    }

    [[noreturn]] void fail(const std::string& what) {
        throw Error("parse error at offset " + std::to_string(pos) + ": " + what +
                    " in '" + text + "'");
    }

    long integer() {
        skip_ws();
        bool neg = eat('-');
        skip_ws();
        if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos])))
            fail("expected integer");
        long v = 0;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
            v = v * 10 + (text[pos++] - '0');
        return neg ? -v : v;
    }

    SuperPoly atom() {
        skip_ws();
        if (pos >= text.size()) fail("unexpected end of input");
        char c = text[pos];
        if (c == '(') {
            ++pos;
            SuperPoly e = expr();
            if (!eat(')')) fail("expected ')'");
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            Rational num(integer());
            if (eat('/')) {
                long den = integer();
                if (den == 0) fail("division by zero");
                num /= den;
            }
            return SuperPoly::constant(chart, Scalar::from_rational(num));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t start = pos;
            while (pos < text.size() &&
                   (std::isalnum(static_cast<unsigned char>(text[pos])) ||
                    text[pos] == '_'))
                ++pos;
            std::string name = text.substr(start, pos - start);
            if (name == "i")
                return SuperPoly::constant(chart, Scalar::imag_unit());
            if (name == "hbar") {
                long e = eat('^') ? integer() : 1;
                return SuperPoly::constant(chart, Scalar::hbar(static_cast<int>(e)));
            }
            auto gi = chart->try_index_of(name);
            if (!gi) fail("unknown generator '" + name + "'");
            return SuperPoly::generator(chart, *gi);
        }
        fail("unexpected character '" + std::string(1, c) + "'");
    }

    SuperPoly power() {
        SuperPoly base = atom();
        if (!eat('^')) return base;
        long e = integer();
        if (e < 0) fail("negative exponent on a non-scalar factor");
        SuperPoly out = SuperPoly::constant(chart, Scalar::one());
        for (long k = 0; k < e; ++k) out = out * base;
        return out;
    }

    SuperPoly factor() {
        if (eat('-')) return -factor();
        if (eat('+')) return factor();
        return power();
    }

    SuperPoly term() {
        SuperPoly out = factor();
        while (eat('*')) out = out * factor();
        return out;
    }

    SuperPoly expr() {
        SuperPoly out = term();
        while (true) {
            if (eat('+'))
                out = out + term();
            else if (eat('-'))
                out = out - term();
            else
                return out;
        }
    }
};

}  // namespace

SuperPoly parse_expression(const std::string& text, ChartPtr chart) {
    Parser p{text, 0, std::move(chart)};
    SuperPoly out = p.expr();
    p.skip_ws();
    if (p.pos != text.size()) p.fail("trailing input");
    return out;
}

}  // namespace superkoszul
