#pragma once

#include <gmpxx.h>

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "interval.hpp"
#include "logvalue.hpp"

namespace heights {

struct Place {
    enum class Kind { arch, finite };
    Kind kind = Kind::arch;
    mpz_class prime;       // meaningful for finite places
    int local_degree = 1;  // [k_v : Q_v]
    int field_degree = 1;  // [k : Q]
    std::string label = "inf";

    mpq_class mass() const {
        mpq_class m(local_degree, field_degree);
        m.canonicalize();
        return m;
    }
    bool same_place(const Place& o) const {
        return kind == o.kind && prime == o.prime && local_degree == o.local_degree &&
               field_degree == o.field_degree && label == o.label;
    }
    void validate() const;
};

Place arch_place(int local_degree = 1, int field_degree = 1, std::string label = "inf");
Place finite_place(const mpz_class& p, int local_degree = 1, int field_degree = 1,
                   std::string label = "");

struct PlaceEntry {
    Place place;
    mpq_class mass;
    LogValue value;
};

// An element of the multiplicative group of positive rationals extended by
// user-declared place tables; torsion (signs, roots of unity) is dropped on
// construction, so this is a coset representative.
class GroupElement {
public:
    GroupElement() = default; // identity, factored

    static GroupElement from_rational(const mpq_class& r);
    // keys may be any integers >= 2 (composites are refactored); zero
    // exponents and key 1 are dropped
    static GroupElement from_exponents(const std::map<mpz_class, mpq_class>& exps);
    // the entries are taken on trust except for the product formula, which
    // must hold within `tol`
    static GroupElement from_place_table(int field_degree,
                                         std::vector<std::pair<Place, LogValue>> entries,
                                         const PrecisionContext& ctx,
                                         const mpq_class& tol = default_product_formula_tol());

    static mpq_class default_product_formula_tol() { return mpq_class(1, 1000000); }

    bool factored() const { return factored_; }
    bool is_identity() const { return factored_ && exps_.empty(); }
    const std::map<mpz_class, mpq_class>& exponents() const;
    int field_degree() const { return field_degree_; }
    const std::vector<std::pair<Place, LogValue>>& table() const;

private:
    bool factored_ = true;
    std::map<mpz_class, mpq_class> exps_;
    int field_degree_ = 1;
    std::vector<std::pair<Place, LogValue>> table_;
};

// support places with masses and exact log values; empty for the identity
std::vector<PlaceEntry> element_log_table(const GroupElement& e, const PrecisionContext& ctx);

// sum of mass * max(0, log value) as a value: symbolic-exact for factored
// elements, an interval constant for tabulated ones
LogValue weil_height_value(const GroupElement& e, const PrecisionContext& ctx);
QInterval weil_height(const GroupElement& e, const PrecisionContext& ctx);

// a * b^r in matching representations
GroupElement group_op(const GroupElement& a, const GroupElement& b, const mpq_class& r);

// sum of mass * log value over the support; exactly zero for factored input
LogValue product_formula_residual_value(const GroupElement& e, const PrecisionContext& ctx);
QInterval product_formula_residual(const GroupElement& e, const PrecisionContext& ctx);

} // namespace heights
