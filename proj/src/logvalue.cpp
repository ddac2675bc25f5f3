#include "heights/logvalue.hpp"

#include <sstream>

#include "heights/factor.hpp"

namespace heights {

QInterval log_of_prime(const mpz_class& p, long bits) {
    static thread_local std::map<std::pair<mpz_class, long>, QInterval> cache;
    auto key = std::make_pair(p, bits);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    QInterval v = QInterval::log_of_rational(mpq_class(p), bits);
    cache.emplace(key, v);
    return v;
}

void LogValue::add_coeff(const mpz_class& p, const mpq_class& c) {
    auto it = logs_.find(p);
    if (it == logs_.end()) {
        if (c != 0) logs_.emplace(p, c);
        return;
    }
    it->second += c;
    if (it->second == 0) logs_.erase(it);
}

LogValue LogValue::log_of(const mpq_class& q) {
    if (q <= 0)
        throw input_error("log of a nonpositive rational");
    LogValue v;
    for (const auto& [p, e] : factorize(q.get_num()))
        v.add_coeff(p, mpq_class(e));
    for (const auto& [p, e] : factorize(q.get_den()))
        v.add_coeff(p, -mpq_class(e));
    return v;
}

LogValue LogValue::operator+(const LogValue& o) const {
    LogValue r;
    r.cst_ = cst_ + o.cst_;
    r.logs_ = logs_;
    for (const auto& [p, c] : o.logs_) r.add_coeff(p, c);
    return r;
}

LogValue LogValue::operator-() const {
    LogValue r;
    r.cst_ = -cst_;
    for (const auto& [p, c] : logs_) r.logs_.emplace(p, -c);
    return r;
}

LogValue LogValue::operator-(const LogValue& o) const { return *this + (-o); }

LogValue LogValue::scale(const mpq_class& c) const {
    LogValue r;
    if (c == 0) return r;
    r.cst_ = cst_.scale(c);
    for (const auto& [p, e] : logs_) r.logs_.emplace(p, e * c);
    return r;
}

QInterval LogValue::eval(long bits) const {
    QInterval acc = cst_;
    for (const auto& [p, c] : logs_)
        acc += log_of_prime(p, bits).scale(c);
    return acc;
}

int LogValue::sign(const PrecisionContext& ctx) const {
    if (is_exact() && logs_.empty()) return sgn(cst_.lo());
    // exact with log terms: nonzero by linear independence of
    // {1, log 2, log 3, ...} over Q; only numeric separation remains
    for (long bits = ctx.bits; bits <= ctx.max_bits; bits *= 2) {
        QInterval v = eval(bits);
        if (v.definitely_positive()) return 1;
        if (v.definitely_negative()) return -1;
        if (v.width() <= cst_.width() * 2) break; // width is data, not rounding
    }
    throw precision_error("sign undecided at precision ceiling: " + describe());
}

std::string LogValue::describe() const {
    std::ostringstream os;
    bool lead = true;
    if (!cst_.is_point()) {
        os << "[" << cst_.lo() << ", " << cst_.hi() << "]";
        lead = false;
    } else if (cst_.lo() != 0 || logs_.empty()) {
        os << cst_.lo();
        lead = false;
    }
    for (const auto& [p, c] : logs_) {
        mpq_class a = c < 0 ? mpq_class(-c) : c;
        if (lead)
            os << (c < 0 ? "-" : "");
        else
            os << (c < 0 ? " - " : " + ");
        if (a != 1) os << a << "*";
        os << "log(" << p << ")";
        lead = false;
    }
    return os.str();
}

} // namespace heights
