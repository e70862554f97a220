#include "qma/coeff_parser.hpp"

#include <cctype>

namespace qma {
namespace {

class Parser {
public:
    explicit Parser(std::string_view s) : s_(s) {}

    QRat run() {
        QRat v = expr();
        skip_ws();
        if (pos_ != s_.size()) fail("trailing input");
        return v;
    }

private:
    QRat expr() {
        QRat v = term();
        for (;;) {
            skip_ws();
            if (accept('+')) {
                v += term();
            } else if (accept('-')) {
                v -= term();
            } else {
                return v;
            }
        }
    }

    QRat term() {
        QRat v = factor();
        for (;;) {
            skip_ws();
            if (accept('*')) {
                v *= factor();
            } else if (accept('/')) {
                const QRat d = factor();
                if (d.is_zero()) fail("division by zero");
                v /= d;
            } else {
                return v;
            }
        }
    }

    QRat factor() {
        skip_ws();
        if (accept('-')) return -factor();
        if (accept('(')) {
            QRat v = expr();
            skip_ws();
            if (!accept(')')) fail("expected ')'");
            return v;
        }
        if (accept('q')) {
            skip_ws();
            if (accept('^')) return QRat::q_power(signed_int());
            return QRat::gen();
        }
        if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
            return QRat(Rational(unsigned_int()));
        fail("expected a factor");
    }

    long signed_int() {
        skip_ws();
        bool neg = false;
        if (accept('-'))
            neg = true;
        else
            accept('+');
        const long v = static_cast<long>(unsigned_int().get_si());
        return neg ? -v : v;
    }

    Integer unsigned_int() {
        skip_ws();
        const size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (pos_ == start) fail("expected an integer");
        return Integer(std::string(s_.substr(start, pos_ - start)));
    }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    [[noreturn]] void fail(const std::string& msg) {
        throw ParseError("coefficient parse error at offset " + std::to_string(pos_) + ": " + msg +
                         " in '" + std::string(s_) + "'");
    }

    std::string_view s_;
    size_t pos_ = 0;
};

} // namespace

QRat parse_coeff(std::string_view text) { return Parser(text).run(); }

} // namespace qma
