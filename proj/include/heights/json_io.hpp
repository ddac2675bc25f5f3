#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include <json.hpp>

#include "dependencies.hpp"
#include "element.hpp"
#include "linalg.hpp"
#include "logvalue.hpp"
#include "minima.hpp"
#include "subgroup.hpp"
#include "zonoid.hpp"

namespace heights {

// preserves member order, so serialized output is byte-stable
using ojson = nlohmann::ordered_json;

// "a/b", integer, or decimal strings ("-12", "3.25", "1.5e-3"); bare JSON
// integers are also accepted
mpq_class parse_rational(const ojson& j);
mpq_class parse_rational_str(const std::string& s);

// sum of terms; a term is a rational, "log:q", or "r*log:q" with q > 0
// rational, e.g. "log:2", "-log:3", "1/2*log:2 + 3"
LogValue parse_log_expr(const std::string& s);

// {"place":label, "local_degree":n}; label "inf..." is archimedean and
// "p:N" is finite at the prime N; other labels take an explicit "kind"
// ("arch"|"finite") and, for finite places, a "prime" member
Place parse_place(const ojson& j, int field_degree);

// {"type":"rational","value":"12/5"}
// {"type":"factored","exponents":{"2":"2","3":"-1/2"}}
// {"type":"place_table","field_degree":d,"entries":[{"place":...,
//   "local_degree":n,"log_norm":"..."}],["tol":"1/1000000"]}
// a bare JSON string is shorthand for the rational form
GroupElement parse_element(const ojson& j, const PrecisionContext& ctx);

// {"generators":[elem, ...]} or a bare array of elements
std::vector<GroupElement> parse_group(const ojson& j, const PrecisionContext& ctx);

// {"rows":R,"cols":C,"entries":[[..C strings..] x R]}
IntMatrix parse_int_matrix(const ojson& j);
QMatrix parse_q_matrix(const ojson& j);
ExactMatrix parse_log_matrix(const ojson& j); // entries in the log-expr grammar

// {"masses":["1","1","1"],"coeffs":{matrix of log exprs}}
SimpleSystem parse_simple_system(const ojson& j, const PrecisionContext& ctx);

// a bare matrix (rows = dimension, columns = segments) or {"segments":matrix}
ZonotopeSpec parse_zonotope(const ojson& j);

// {"field_degree":1,"places":[place, ...],"unit_log_table":{matrix}}
SUnitContext parse_sunit(const ojson& j);

std::string rational_str(const mpq_class& q);
ojson interval_json(const QInterval& x, int digits = 30);
ojson int_vec_json(const std::vector<mpz_class>& v);
ojson int_matrix_json(const IntMatrix& m);
ojson element_json(const GroupElement& e);

// midpoint rounded to nearest at `digits` significant figures; plain decimal
// when short ("12", "1.09861228866811")
std::string decimal_brief(const QInterval& x, int digits = 15);

} // namespace heights
