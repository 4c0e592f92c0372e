#include "polarcover/poly.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <set>

#include "polarcover/errors.hpp"

namespace polarcover {

// ---------------------------------------------------------------- Frame

namespace {

bool is_identifier(const std::string& s) {
    if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
    return std::all_of(s.begin(), s.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

}  // namespace

Frame::Frame(std::vector<std::string> names) : names_(std::move(names)) {
    std::set<std::string> seen;
    for (const auto& n : names_) {
        if (!is_identifier(n)) throw Error(ErrorCode::usage, "invalid variable name '" + n + "'");
        if (!seen.insert(n).second) throw Error(ErrorCode::usage, "duplicate variable name '" + n + "'");
    }
}

FramePtr Frame::make(std::vector<std::string> names) { return std::make_shared<const Frame>(std::move(names)); }

FramePtr Frame::indexed(std::string_view prefix, std::size_t count, std::size_t first) {
    std::vector<std::string> names;
    names.reserve(count);
    for (std::size_t i = 0; i < count; ++i) names.push_back(std::string(prefix) + std::to_string(first + i));
    return make(std::move(names));
}

FramePtr Frame::adapted(std::size_t q, std::size_t r) {
    if (q >= r) throw Error(ErrorCode::usage, "adapted frame needs q < r");
    std::vector<std::string> names;
    for (std::size_t i = 0; i <= r; ++i) names.push_back((i <= q ? "Z" : "Y") + std::to_string(i));
    return make(std::move(names));
}

std::optional<std::size_t> Frame::find(std::string_view name) const {
    for (std::size_t i = 0; i < names_.size(); ++i)
        if (names_[i] == name) return i;
    return std::nullopt;
}

bool same_frame(const FramePtr& a, const FramePtr& b) { return a == b || (a && b && *a == *b); }

unsigned total_degree(const Exponent& e) { return std::accumulate(e.begin(), e.end(), 0U); }

bool GrlexDescending::operator()(const Exponent& a, const Exponent& b) const {
    const unsigned da = total_degree(a);
    const unsigned db = total_degree(b);
    if (da != db) return da > db;
    return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
}

// ---------------------------------------------------------------- Poly

Poly::Poly(Field field, FramePtr frame) : field_(std::move(field)), frame_(std::move(frame)) {
    if (!field_ || !frame_) throw Error(ErrorCode::usage, "polynomial needs a field and a frame");
}

Poly Poly::constant(Field field, FramePtr frame, const Scalar& c) {
    Poly p(std::move(field), std::move(frame));
    p.add_term(Exponent(p.nvars(), 0), c);
    p.hdeg_ = 0;
    return p;
}

Poly Poly::variable(Field field, FramePtr frame, std::size_t index) {
    Poly p(field, std::move(frame));
    if (index >= p.nvars()) throw Error(ErrorCode::usage, "variable index out of frame");
    Exponent e(p.nvars(), 0);
    e[index] = 1;
    p.add_term(e, Scalar::from_int(field, 1));
    p.hdeg_ = 1;
    return p;
}

Poly Poly::monomial(Field field, FramePtr frame, Exponent e, const Scalar& c) {
    Poly p(std::move(field), std::move(frame));
    if (e.size() != p.nvars()) throw Error(ErrorCode::usage, "exponent length does not match frame");
    const unsigned deg = polarcover::total_degree(e);
    p.add_term(e, c);
    p.hdeg_ = deg;
    return p;
}

std::size_t Poly::nvars() const { return frame_->size(); }

bool Poly::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && polarcover::total_degree(terms_.begin()->first) == 0);
}

int Poly::total_degree() const {
    if (terms_.empty()) return -1;
    return static_cast<int>(polarcover::total_degree(terms_.begin()->first));
}

unsigned Poly::degree_in(std::size_t var) const {
    unsigned d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, e.at(var));
    return d;
}

unsigned Poly::order_in(std::size_t var) const {
    if (terms_.empty()) return 0;
    unsigned d = ~0U;
    for (const auto& [e, c] : terms_) d = std::min(d, e.at(var));
    return d;
}

bool Poly::is_homogeneous() const {
    if (terms_.empty()) return true;
    const unsigned d = polarcover::total_degree(terms_.begin()->first);
    return std::all_of(terms_.begin(), terms_.end(),
                       [d](const auto& t) { return polarcover::total_degree(t.first) == d; });
}

Poly& Poly::mark_homogeneous(std::optional<unsigned> degree) {
    unsigned d = degree.value_or(terms_.empty() ? 0U : static_cast<unsigned>(total_degree()));
    for (const auto& [e, c] : terms_)
        if (polarcover::total_degree(e) != d)
            throw Error(ErrorCode::usage, "polynomial is not homogeneous of degree " + std::to_string(d));
    hdeg_ = d;
    return *this;
}

Scalar Poly::coefficient(const Exponent& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Scalar(field_) : it->second;
}

Scalar Poly::constant_term() const { return coefficient(Exponent(nvars(), 0)); }

Scalar Poly::leading_coefficient() const {
    if (terms_.empty()) throw Error(ErrorCode::usage, "zero polynomial has no leading term");
    return terms_.begin()->second;
}

const Exponent& Poly::leading_exponent() const {
    if (terms_.empty()) throw Error(ErrorCode::usage, "zero polynomial has no leading term");
    return terms_.begin()->first;
}

void Poly::add_term(const Exponent& e, const Scalar& c) {
    if (e.size() != nvars()) throw Error(ErrorCode::usage, "exponent length does not match frame");
    if (c.is_zero()) return;
    if (hdeg_ && polarcover::total_degree(e) != *hdeg_) hdeg_.reset();
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        terms_.emplace(e, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
}

void Poly::check_compatible(const Poly& rhs) const {
    if (!same_field(field_, rhs.field_))
        throw Error(ErrorCode::usage, "field mismatch: " + field_->describe() + " vs " + rhs.field_->describe());
    if (!same_frame(frame_, rhs.frame_)) throw Error(ErrorCode::usage, "frame mismatch between polynomials");
}

Poly Poly::operator-() const {
    Poly out(field_, frame_);
    out.hdeg_ = hdeg_;
    for (const auto& [e, c] : terms_) out.terms_.emplace_hint(out.terms_.end(), e, -c);
    return out;
}

Poly& Poly::operator+=(const Poly& rhs) {
    check_compatible(rhs);
    std::optional<unsigned> flag;
    if (hdeg_ && rhs.hdeg_ && *hdeg_ == *rhs.hdeg_) flag = hdeg_;
    hdeg_.reset();
    for (const auto& [e, c] : rhs.terms_) add_term(e, c);
    hdeg_ = flag;
    return *this;
}

Poly& Poly::operator-=(const Poly& rhs) { return *this += -rhs; }

Poly operator*(const Poly& lhs, const Poly& rhs) {
    lhs.check_compatible(rhs);
    Poly out(lhs.field_, lhs.frame_);
    const std::size_t n = lhs.nvars();
    Exponent e(n);
    for (const auto& [ea, ca] : lhs.terms_) {
        for (const auto& [eb, cb] : rhs.terms_) {
            for (std::size_t i = 0; i < n; ++i) e[i] = ea[i] + eb[i];
            out.add_term(e, ca * cb);
        }
    }
    if (lhs.hdeg_ && rhs.hdeg_) out.hdeg_ = *lhs.hdeg_ + *rhs.hdeg_;
    return out;
}

Poly operator*(const Poly& lhs, const Scalar& rhs) {
    if (!same_field(lhs.field_, rhs.field()))
        throw Error(ErrorCode::usage, "field mismatch in scalar multiplication");
    Poly out(lhs.field_, lhs.frame_);
    out.hdeg_ = lhs.hdeg_;
    if (rhs.is_zero()) return out;
    for (const auto& [e, c] : lhs.terms_) {
        Scalar v = c * rhs;
        if (!v.is_zero()) out.terms_.emplace_hint(out.terms_.end(), e, std::move(v));
    }
    return out;
}

bool Poly::operator==(const Poly& rhs) const {
    if (!same_field(field_, rhs.field_) || !same_frame(frame_, rhs.frame_)) return false;
    if (terms_.size() != rhs.terms_.size()) return false;
    auto a = terms_.begin();
    auto b = rhs.terms_.begin();
    for (; a != terms_.end(); ++a, ++b)
        if (a->first != b->first || a->second != b->second) return false;
    return true;
}

Poly Poly::pow(unsigned e) const {
    Poly result = constant(field_, frame_, Scalar::from_int(field_, 1));
    Poly base = *this;
    while (e > 0) {
        if (e & 1U) result = result * base;
        e >>= 1U;
        if (e > 0) base = base * base;
    }
    return result;
}

Poly Poly::derivative(std::size_t var) const {
    if (var >= nvars()) throw Error(ErrorCode::usage, "derivative variable out of frame");
    Poly out(field_, frame_);
    for (const auto& [e, c] : terms_) {
        if (e[var] == 0) continue;
        Exponent f = e;
        --f[var];
        out.add_term(f, c * Scalar::from_int(field_, e[var]));
    }
    if (hdeg_ && *hdeg_ > 0) out.hdeg_ = *hdeg_ - 1;
    return out;
}

Scalar Poly::evaluate(std::span<const Scalar> point) const {
    if (point.size() != nvars()) throw Error(ErrorCode::usage, "evaluation point has wrong length");
    std::vector<std::vector<Scalar>> powers(nvars());
    for (std::size_t i = 0; i < nvars(); ++i) {
        if (!same_field(point[i].field(), field_)) throw Error(ErrorCode::usage, "evaluation point field mismatch");
        powers[i].push_back(Scalar::from_int(field_, 1));
    }
    Scalar sum(field_);
    for (const auto& [e, c] : terms_) {
        Scalar term = c;
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            auto& pw = powers[i];
            while (pw.size() <= e[i]) pw.push_back(pw.back() * point[i]);
            term *= pw[e[i]];
        }
        sum += term;
    }
    return sum;
}

Poly Poly::substitute(std::span<const Poly> images) const {
    if (images.size() != nvars()) throw Error(ErrorCode::usage, "substitution needs one image per variable");
    if (images.empty()) return *this;
    const Field& f = images[0].field();
    const FramePtr& fr = images[0].frame();
    for (const auto& img : images) {
        if (!same_field(img.field(), f) || !same_frame(img.frame(), fr))
            throw Error(ErrorCode::usage, "substitution images must share field and frame");
    }
    if (!same_field(f, field_)) throw Error(ErrorCode::usage, "substitution images live over another field");
    std::vector<std::vector<Poly>> powers(nvars());
    Poly one = constant(f, fr, Scalar::from_int(f, 1));
    Poly out(f, fr);
    for (const auto& [e, c] : terms_) {
        Poly term = constant(f, fr, c);
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            auto& pw = powers[i];
            if (pw.empty()) pw.push_back(one);
            while (pw.size() <= e[i]) pw.push_back(pw.back() * images[i]);
            term = term * pw[e[i]];
        }
        out.hdeg_.reset();
        out += term;
    }
    out.hdeg_.reset();
    if (hdeg_) {
        std::optional<unsigned> k = images[0].hdeg_;
        bool uniform = k.has_value();
        for (const auto& img : images) uniform = uniform && img.hdeg_ == k;
        if (uniform && out.is_homogeneous()) out.hdeg_ = *hdeg_ * *k;
    }
    return out;
}

Poly Poly::coefficient_of(std::size_t var, unsigned power) const {
    if (var >= nvars()) throw Error(ErrorCode::usage, "variable out of frame");
    Poly out(field_, frame_);
    for (const auto& [e, c] : terms_) {
        if (e[var] != power) continue;
        Exponent f = e;
        f[var] = 0;
        out.add_term(f, c);
    }
    if (hdeg_ && *hdeg_ >= power) out.hdeg_ = *hdeg_ - power;
    return out;
}

Poly Poly::divide_exact(const Poly& rhs) const {
    check_compatible(rhs);
    if (rhs.is_zero()) throw Error(ErrorCode::usage, "division by the zero polynomial");
    Poly rem = *this;
    rem.hdeg_.reset();
    Poly quot(field_, frame_);
    const Exponent& lead = rhs.leading_exponent();
    const Scalar lead_inv = rhs.leading_coefficient().inverse();
    const std::size_t n = nvars();
    while (!rem.is_zero()) {
        const Exponent& e = rem.leading_exponent();
        Exponent f(n);
        for (std::size_t i = 0; i < n; ++i) {
            if (e[i] < lead[i]) throw Error(ErrorCode::usage, "polynomial division is not exact");
            f[i] = e[i] - lead[i];
        }
        Scalar c = rem.leading_coefficient() * lead_inv;
        Poly t = monomial(field_, frame_, f, c);
        quot.add_term(f, c);
        rem -= t * rhs;
    }
    return quot;
}

Poly Poly::reframed(FramePtr frame) const {
    if (frame->size() != nvars()) throw Error(ErrorCode::usage, "reframe needs a frame of equal size");
    Poly out(field_, std::move(frame));
    out.terms_ = terms_;
    out.hdeg_ = hdeg_;
    return out;
}

Poly univariate(Field field, FramePtr frame, std::span<const Scalar> coeffs) {
    if (frame->size() != 1) throw Error(ErrorCode::usage, "univariate polynomial needs a one-variable frame");
    Poly p(field, frame);
    for (std::size_t k = 0; k < coeffs.size(); ++k) p.add_term(Exponent{static_cast<std::uint32_t>(k)}, coeffs[k]);
    return p;
}

std::vector<Scalar> dense_coefficients(const Poly& p) {
    if (p.nvars() != 1) throw Error(ErrorCode::usage, "dense coefficients need a univariate polynomial");
    std::vector<Scalar> out(static_cast<std::size_t>(std::max(p.total_degree(), 0)) + 1, Scalar(p.field()));
    for (const auto& [e, c] : p.terms()) out[e[0]] = c;
    return out;
}

}  // namespace polarcover
