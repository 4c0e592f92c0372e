#include "polarcover/poly_text.hpp"

#include <cctype>
#include <sstream>

#include "polarcover/errors.hpp"

namespace polarcover {

namespace {

std::string monomial_text(const Frame& frame, const Exponent& e) {
    std::string out;
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        if (!out.empty()) out += '*';
        out += frame.name(i);
        if (e[i] > 1) out += '^' + std::to_string(e[i]);
    }
    return out;
}

class Parser {
  public:
    Parser(std::string_view text, std::size_t offset, const Field& field, const FramePtr& frame)
        : text_(text), offset_(offset), field_(field), frame_(frame) {}

    Poly parse_all() {
        skip_ws();
        if (at_end()) fail("empty polynomial");
        Poly out(field_, frame_);
        bool negative = false;
        if (peek() == '-') {
            negative = true;
            ++pos_;
        } else if (peek() == '+') {
            ++pos_;
        }
        for (;;) {
            skip_ws();
            auto [e, c] = parse_term();
            out.add_term(e, negative ? -c : c);
            skip_ws();
            if (at_end()) break;
            if (peek() == '+') {
                negative = false;
            } else if (peek() == '-') {
                negative = true;
            } else {
                fail(std::string("expected '+' or '-', found '") + peek() + "'");
            }
            ++pos_;
        }
        return out;
    }

  private:
    bool at_end() const { return pos_ >= text_.size(); }
    char peek() const { return text_[pos_]; }
    void skip_ws() {
        while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
    }
    [[noreturn]] void fail(const std::string& what) const { throw ParseError(offset_ + pos_, what); }

    std::string read_digits() {
        std::size_t start = pos_;
        while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
        if (start == pos_) fail("expected digits");
        return std::string(text_.substr(start, pos_ - start));
    }

    std::string read_identifier() {
        std::size_t start = pos_;
        while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')) ++pos_;
        return std::string(text_.substr(start, pos_ - start));
    }

    std::string_view read_group() {
        // at '(' ; returns contents up to the matching ')'
        std::size_t depth = 0;
        std::size_t start = pos_ + 1;
        for (; !at_end(); ++pos_) {
            if (peek() == '(') ++depth;
            if (peek() == ')' && --depth == 0) {
                std::string_view inner = text_.substr(start, pos_ - start);
                ++pos_;
                return inner;
            }
        }
        fail("unbalanced parenthesis");
    }

    Scalar parse_group_coefficient() {
        if (!field_->is_function()) fail("parenthesized coefficients need a function field");
        std::size_t inner_offset = offset_ + pos_ + 1;
        Poly num = Parser(read_group(), inner_offset, field_->base(), field_->symbols()).parse_all();
        Poly den = Poly::constant(field_->base(), field_->symbols(), Scalar::from_int(field_->base(), 1));
        skip_ws();
        if (!at_end() && peek() == '/') {
            ++pos_;
            skip_ws();
            if (at_end() || peek() != '(') fail("expected '(' after '/' in a function-field coefficient");
            inner_offset = offset_ + pos_ + 1;
            den = Parser(read_group(), inner_offset, field_->base(), field_->symbols()).parse_all();
            if (den.is_zero()) fail("zero denominator");
        }
        return Scalar::fraction(field_, num, den);
    }

    Scalar parse_number() {
        mpz_class num(read_digits());
        mpz_class den(1);
        if (!at_end() && peek() == '/') {
            ++pos_;
            den = mpz_class(read_digits());
            if (den == 0) fail("zero denominator");
        }
        mpq_class q(num, den);
        q.canonicalize();
        try {
            return Scalar::from_mpq(field_, q);
        } catch (const Error& e) {
            fail(e.what());
        }
    }

    std::pair<Exponent, Scalar> parse_term() {
        Exponent e(frame_->size(), 0);
        Scalar c = Scalar::from_int(field_, 1);
        for (;;) {
            skip_ws();
            if (at_end()) fail("expected a factor");
            const char ch = peek();
            if (std::isdigit(static_cast<unsigned char>(ch))) {
                c *= parse_number();
            } else if (ch == '(') {
                c *= parse_group_coefficient();
            } else if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
                const std::size_t at = pos_;
                std::string name = read_identifier();
                auto idx = frame_->find(name);
                if (!idx) {
                    pos_ = at;
                    fail("unknown variable '" + name + "'");
                }
                unsigned power = 1;
                skip_ws();
                if (!at_end() && peek() == '^') {
                    ++pos_;
                    skip_ws();
                    power = static_cast<unsigned>(std::stoul(read_digits()));
                }
                e[*idx] += power;
            } else {
                fail(std::string("unexpected character '") + ch + "'");
            }
            skip_ws();
            if (at_end() || peek() != '*') break;
            ++pos_;
        }
        return {std::move(e), std::move(c)};
    }

    std::string_view text_;
    std::size_t offset_;
    std::size_t pos_ = 0;
    const Field& field_;
    const FramePtr& frame_;
};

}  // namespace

std::string to_text(const Poly& p) {
    if (p.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [e, c] : p.terms()) {
        const std::string mono = monomial_text(*p.frame(), e);
        const bool negative = c.is_negative();
        const Scalar mag = negative ? -c : c;
        std::string body;
        if (mono.empty())
            body = mag.to_string();
        else if (mag.is_one())
            body = mono;
        else
            body = mag.to_string() + "*" + mono;
        if (first)
            out += negative ? "-" + body : body;
        else
            out += (negative ? " - " : " + ") + body;
        first = false;
    }
    return out;
}

Poly parse_poly(std::string_view text, const Field& field, const FramePtr& frame) {
    Poly p = Parser(text, 0, field, frame).parse_all();
    return p;
}

std::string to_document(const Poly& p) {
    std::ostringstream os;
    os << "vars: ";
    for (std::size_t i = 0; i < p.nvars(); ++i) os << (i ? "," : "") << p.frame()->name(i);
    os << "\n" << to_text(p) << "\n";
    return os.str();
}

Poly parse_document(std::string_view text, const Field& field) {
    constexpr std::string_view header = "vars:";
    if (text.substr(0, header.size()) != header) throw ParseError(0, "document must start with 'vars:'");
    const std::size_t eol = text.find('\n');
    if (eol == std::string_view::npos) throw ParseError(text.size(), "missing polynomial line");
    std::string_view names = text.substr(header.size(), eol - header.size());
    std::vector<std::string> vars;
    std::string cur;
    for (char ch : names) {
        if (ch == ',') {
            vars.push_back(cur);
            cur.clear();
        } else if (!std::isspace(static_cast<unsigned char>(ch))) {
            cur += ch;
        }
    }
    if (!cur.empty()) vars.push_back(cur);
    FramePtr frame;
    try {
        frame = Frame::make(vars);
    } catch (const Error& e) {
        throw ParseError(header.size(), e.what());
    }
    std::string_view body = text.substr(eol + 1);
    while (!body.empty() && (body.back() == '\n' || body.back() == '\r')) body.remove_suffix(1);
    try {
        return parse_poly(body, field, frame);
    } catch (const ParseError& e) {
        throw ParseError(eol + 1 + e.position(), std::string(e.what()).substr(std::string(e.what()).find(':') + 2));
    }
}

Scalar parse_scalar(std::string_view text, const Field& field) {
    auto frame = Frame::make({"_s"});
    Poly p = parse_poly(text, field, frame);
    if (!p.is_constant()) throw ParseError(0, "scalar expected, found a polynomial");
    return p.constant_term();
}

}  // namespace polarcover
