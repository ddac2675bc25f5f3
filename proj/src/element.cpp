#include "heights/element.hpp"

#include "heights/factor.hpp"

namespace heights {

void Place::validate() const {
    if (field_degree < 1 || local_degree < 1)
        throw input_error("place degrees must be positive");
    if (local_degree > field_degree)
        throw input_error("local degree exceeds field degree at place " + label);
    if (kind == Kind::arch && local_degree > 2)
        throw input_error("archimedean local degree must be 1 or 2 at place " + label);
    if (kind == Kind::finite && prime < 2)
        throw input_error("finite place needs a prime at place " + label);
}

Place arch_place(int local_degree, int field_degree, std::string label) {
    Place p;
    p.kind = Place::Kind::arch;
    p.local_degree = local_degree;
    p.field_degree = field_degree;
    p.label = std::move(label);
    p.validate();
    return p;
}

Place finite_place(const mpz_class& p, int local_degree, int field_degree, std::string label) {
    Place pl;
    pl.kind = Place::Kind::finite;
    pl.prime = p;
    pl.local_degree = local_degree;
    pl.field_degree = field_degree;
    pl.label = label.empty() ? "p:" + p.get_str() : std::move(label);
    pl.validate();
    return pl;
}

GroupElement GroupElement::from_rational(const mpq_class& r) {
    if (r == 0)
        throw input_error("zero is not a group element");
    mpq_class v = r < 0 ? mpq_class(-r) : r; // sign is torsion
    std::map<mpz_class, mpq_class> exps;
    for (const auto& [p, e] : factorize(v.get_num())) exps[p] = mpq_class(e);
    for (const auto& [p, e] : factorize(v.get_den())) exps[p] -= mpq_class(e);
    GroupElement g;
    g.exps_ = std::move(exps);
    return g;
}

GroupElement GroupElement::from_exponents(const std::map<mpz_class, mpq_class>& exps) {
    GroupElement g;
    for (const auto& [k, e] : exps) {
        if (k <= 0)
            throw input_error("exponent key must be a positive integer, got " + k.get_str());
        if (k == 1 || e == 0) continue;
        if (is_prime(k)) {
            g.exps_[k] += e;
        } else {
            for (const auto& [p, m] : factorize(k)) g.exps_[p] += e * mpq_class(m);
        }
    }
    for (auto it = g.exps_.begin(); it != g.exps_.end();)
        it = (it->second == 0) ? g.exps_.erase(it) : std::next(it);
    return g;
}

GroupElement GroupElement::from_place_table(int field_degree,
                                            std::vector<std::pair<Place, LogValue>> entries,
                                            const PrecisionContext& ctx, const mpq_class& tol) {
    if (field_degree < 1)
        throw input_error("field degree must be positive");
    GroupElement g;
    g.factored_ = false;
    g.field_degree_ = field_degree;
    for (auto& [pl, lv] : entries) {
        if (pl.field_degree != field_degree)
            throw input_error("place " + pl.label + " declares a different field degree");
        pl.validate();
    }
    g.table_ = std::move(entries);

    LogValue residual;
    for (const auto& [pl, lv] : g.table_) residual += lv.scale(pl.mass());
    if (!residual.is_zero()) {
        QInterval r = residual.eval(ctx.bits);
        if (r.lo() > tol || r.hi() < -tol)
            throw input_error("place table violates the product formula beyond tolerance");
    }
    return g;
}

const std::map<mpz_class, mpq_class>& GroupElement::exponents() const {
    if (!factored_)
        throw input_error("tabulated element has no exponent map");
    return exps_;
}

const std::vector<std::pair<Place, LogValue>>& GroupElement::table() const {
    if (factored_)
        throw input_error("factored element has no place table");
    return table_;
}

std::vector<PlaceEntry> element_log_table(const GroupElement& e, const PrecisionContext&) {
    std::vector<PlaceEntry> out;
    if (e.factored()) {
        if (e.is_identity()) return out;
        LogValue arch;
        for (const auto& [p, c] : e.exponents()) arch += LogValue::log_of(mpq_class(p)).scale(c);
        out.push_back({arch_place(), mpq_class(1), arch});
        for (const auto& [p, c] : e.exponents()) {
            // ||alpha||_p = p^(-c), so the log value is -c log p
            out.push_back({finite_place(p), mpq_class(1), LogValue::log_of(mpq_class(p)).scale(-c)});
        }
        return out;
    }
    for (const auto& [pl, lv] : e.table()) out.push_back({pl, pl.mass(), lv});
    return out;
}

LogValue weil_height_value(const GroupElement& e, const PrecisionContext& ctx) {
    LogValue h;
    for (const auto& entry : element_log_table(e, ctx)) {
        if (entry.value.is_exact()) {
            h += entry.value.pos_part(ctx).scale(entry.mass);
        } else {
            // interval data: max(0, x) needs no sign decision
            h += LogValue(entry.value.eval(ctx.bits).pos_part()).scale(entry.mass);
        }
    }
    return h;
}

QInterval weil_height(const GroupElement& e, const PrecisionContext& ctx) {
    return weil_height_value(e, ctx).eval(ctx.bits);
}

GroupElement group_op(const GroupElement& a, const GroupElement& b, const mpq_class& r) {
    if (a.factored() && b.factored()) {
        std::map<mpz_class, mpq_class> exps = a.exponents();
        for (const auto& [p, e] : b.exponents()) exps[p] += e * r;
        return GroupElement::from_exponents(exps);
    }
    if (!a.factored() && !b.factored()) {
        const auto& ta = a.table();
        const auto& tb = b.table();
        if (a.field_degree() != b.field_degree() || ta.size() != tb.size())
            throw input_error("group_op on tabulated elements over different place lists");
        GroupElement g;
        std::vector<std::pair<Place, LogValue>> entries;
        for (size_t i = 0; i < ta.size(); ++i) {
            if (!ta[i].first.same_place(tb[i].first))
                throw input_error("group_op on tabulated elements over different place lists");
            entries.emplace_back(ta[i].first, ta[i].second + tb[i].second.scale(r));
        }
        // linear in the log values, so the product formula is inherited
        PrecisionContext lax;
        return GroupElement::from_place_table(a.field_degree(), std::move(entries), lax,
                                              mpq_class(1));
    }
    throw input_error("group_op requires matching representations");
}

LogValue product_formula_residual_value(const GroupElement& e, const PrecisionContext& ctx) {
    LogValue r;
    for (const auto& entry : element_log_table(e, ctx)) r += entry.value.scale(entry.mass);
    return r;
}

QInterval product_formula_residual(const GroupElement& e, const PrecisionContext& ctx) {
    LogValue r = product_formula_residual_value(e, ctx);
    if (r.is_zero()) return QInterval();
    return r.eval(ctx.bits);
}

} // namespace heights
