#include "heights/json_io.hpp"

#include <mpfr.h>

#include <cctype>
#include <cstdio>
#include <utility>
#include <vector>

namespace heights {

namespace {

std::string trim(const std::string& s) {
    size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

mpz_class parse_mpz(const std::string& raw, const std::string& what) {
    std::string s = trim(raw);
    if (!s.empty() && s[0] == '+') s.erase(0, 1);
    try {
        if (s.empty()) throw std::invalid_argument("empty");
        return mpz_class(s, 10);
    } catch (const std::invalid_argument&) {
        throw input_error("cannot read " + what + " from '" + raw + "'");
    }
}

int get_int(const ojson& j, const std::string& what) {
    if (j.is_number_integer() || j.is_number_unsigned()) {
        long long v = j.get<long long>();
        if (v < -1000000000LL || v > 1000000000LL)
            throw input_error(what + " out of range");
        return static_cast<int>(v);
    }
    if (j.is_string()) {
        mpq_class q = parse_rational_str(j.get<std::string>());
        if (q.get_den() != 1 || !q.get_num().fits_sint_p())
            throw input_error(what + " must be an integer");
        return static_cast<int>(q.get_num().get_si());
    }
    throw input_error(what + " must be an integer");
}

struct MatrixShape {
    int rows = 0, cols = 0;
    const ojson* entries = nullptr;
};

MatrixShape matrix_shape(const ojson& j) {
    if (!j.is_object() || !j.contains("rows") || !j.contains("cols") || !j.contains("entries"))
        throw input_error("matrix JSON needs \"rows\", \"cols\", \"entries\"");
    MatrixShape sh;
    sh.rows = get_int(j.at("rows"), "rows");
    sh.cols = get_int(j.at("cols"), "cols");
    if (sh.rows <= 0 || sh.cols <= 0) throw input_error("matrix dimensions must be positive");
    const ojson& e = j.at("entries");
    if (!e.is_array() || static_cast<int>(e.size()) != sh.rows)
        throw input_error("\"entries\" must hold one array per row");
    for (const auto& row : e)
        if (!row.is_array() || static_cast<int>(row.size()) != sh.cols)
            throw input_error("every matrix row needs exactly \"cols\" entries");
    sh.entries = &e;
    return sh;
}

std::string cell_ref(int i, int j) {
    return "entry (" + std::to_string(i) + "," + std::to_string(j) + ")";
}

// renders a LogValue in the grammar parse_log_expr reads back
std::string log_expr_str(const LogValue& v) {
    std::string out;
    auto append = [&out](const mpq_class& c, const std::string& sym) {
        bool neg = c < 0;
        mpq_class a = neg ? mpq_class(-c) : c;
        if (out.empty())
            out += neg ? "-" : "";
        else
            out += neg ? " - " : " + ";
        if (sym.empty()) {
            out += a.get_str();
            return;
        }
        if (a != 1) out += a.get_str() + "*";
        out += sym;
    };
    if (!v.cst().is_point()) {
        out = "[" + v.cst().decimal_lo(30) + ", " + v.cst().decimal_hi(30) + "]";
    } else if (v.cst().lo() != 0 || v.log_coeffs().empty()) {
        append(v.cst().lo(), "");
    }
    for (const auto& [p, c] : v.log_coeffs()) append(c, "log:" + p.get_str());
    return out;
}

} // namespace

mpq_class parse_rational_str(const std::string& raw) {
    std::string s = trim(raw);
    if (s.empty()) throw input_error("empty number string");
    size_t slash = s.find('/');
    if (slash != std::string::npos) {
        mpz_class num = parse_mpz(s.substr(0, slash), "numerator");
        mpz_class den = parse_mpz(s.substr(slash + 1), "denominator");
        if (den == 0) throw input_error("zero denominator in '" + raw + "'");
        mpq_class q(num, den);
        q.canonicalize();
        return q;
    }
    // plain integer or decimal, with an optional power-of-ten exponent
    long exp10 = 0;
    size_t epos = s.find_first_of("eE");
    if (epos != std::string::npos) {
        mpz_class e = parse_mpz(s.substr(epos + 1), "exponent");
        if (!e.fits_sint_p() || e > 65536 || e < -65536)
            throw input_error("exponent out of range in '" + raw + "'");
        exp10 = e.get_si();
        s = s.substr(0, epos);
    }
    bool neg = false;
    size_t i = 0;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) neg = s[i++] == '-';
    std::string digits;
    long frac = 0;
    bool dot = false;
    for (; i < s.size(); ++i) {
        if (s[i] == '.') {
            if (dot) throw input_error("two decimal points in '" + raw + "'");
            dot = true;
            continue;
        }
        if (!std::isdigit(static_cast<unsigned char>(s[i])))
            throw input_error("cannot read a number from '" + raw + "'");
        digits += s[i];
        if (dot) ++frac;
    }
    if (digits.empty()) throw input_error("cannot read a number from '" + raw + "'");
    mpz_class num(digits, 10);
    if (neg) num = -num;
    mpz_class den = 1;
    long shift = exp10 - frac;
    mpz_class ten = 10;
    if (shift >= 0) {
        mpz_class f;
        mpz_pow_ui(f.get_mpz_t(), ten.get_mpz_t(), static_cast<unsigned long>(shift));
        num *= f;
    } else {
        mpz_pow_ui(den.get_mpz_t(), ten.get_mpz_t(), static_cast<unsigned long>(-shift));
    }
    mpq_class q(num, den);
    q.canonicalize();
    return q;
}

mpq_class parse_rational(const ojson& j) {
    if (j.is_string()) return parse_rational_str(j.get<std::string>());
    if (j.is_number_integer() || j.is_number_unsigned())
        return mpq_class(static_cast<long>(j.get<long long>()));
    if (j.is_number_float())
        throw input_error("write fractional numbers as strings, e.g. \"3/2\" or \"1.5\"");
    throw input_error("expected a number or a number string");
}

LogValue parse_log_expr(const std::string& s) {
    size_t i = 0;
    const size_t n = s.size();
    auto skip = [&] {
        while (i < n && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    };
    auto number = [&]() -> std::string {
        size_t start = i;
        while (i < n) {
            char c = s[i];
            if (std::isdigit(static_cast<unsigned char>(c)) || c == '.' || c == '/') {
                ++i;
                continue;
            }
            if ((c == 'e' || c == 'E') && i + 1 < n &&
                (std::isdigit(static_cast<unsigned char>(s[i + 1])) || s[i + 1] == '+' ||
                 s[i + 1] == '-')) {
                i += 2;
                continue;
            }
            break;
        }
        return s.substr(start, i - start);
    };
    LogValue acc;
    bool any = false;
    skip();
    while (i < n) {
        int sign = 1;
        if (s[i] == '+' || s[i] == '-') {
            sign = s[i] == '-' ? -1 : 1;
            ++i;
            skip();
        } else if (any) {
            throw input_error("expected '+' or '-' between terms in '" + s + "'");
        }
        if (i >= n) throw input_error("dangling sign in '" + s + "'");
        mpq_class coef(1);
        bool is_log = s.compare(i, 4, "log:") == 0;
        if (!is_log) {
            std::string tok = number();
            if (tok.empty())
                throw input_error("cannot read a term at position " + std::to_string(i) +
                                  " in '" + s + "'");
            coef = parse_rational_str(tok);
            skip();
            if (i < n && s[i] == '*') {
                ++i;
                skip();
                if (s.compare(i, 4, "log:") != 0)
                    throw input_error("'*' must be followed by 'log:' in '" + s + "'");
            }
            is_log = s.compare(i, 4, "log:") == 0;
        }
        if (is_log) {
            i += 4;
            std::string tok = number();
            if (tok.empty()) throw input_error("'log:' needs a rational argument in '" + s + "'");
            mpq_class q = parse_rational_str(tok);
            if (q <= 0) throw input_error("'log:' argument must be positive in '" + s + "'");
            mpq_class sc = coef;
            if (sign < 0) sc = -sc;
            acc = acc + LogValue::log_of(q).scale(sc);
        } else {
            mpq_class v = coef;
            if (sign < 0) v = -v;
            acc = acc + LogValue(v);
        }
        any = true;
        skip();
    }
    if (!any) throw input_error("empty log expression");
    return acc;
}

Place parse_place(const ojson& j, int field_degree) {
    if (!j.is_object() || !j.contains("place") || !j.at("place").is_string())
        throw input_error("a place entry needs a \"place\" label string");
    std::string label = j.at("place").get<std::string>();
    int local = j.contains("local_degree") ? get_int(j.at("local_degree"), "local_degree") : 1;
    std::string kind;
    if (j.contains("kind")) {
        if (!j.at("kind").is_string()) throw input_error("place \"kind\" must be a string");
        kind = j.at("kind").get<std::string>();
    } else if (label.rfind("inf", 0) == 0) {
        kind = "arch";
    } else if (label.rfind("p:", 0) == 0 || j.contains("prime")) {
        kind = "finite";
    } else {
        kind = "arch";
    }
    if (kind == "arch") return arch_place(local, field_degree, label);
    if (kind != "finite")
        throw input_error("unknown place kind '" + kind + "' (use \"arch\" or \"finite\")");
    mpz_class p;
    if (j.contains("prime")) {
        mpq_class q = parse_rational(j.at("prime"));
        if (q.get_den() != 1) throw input_error("place prime must be an integer");
        p = q.get_num();
    } else if (label.rfind("p:", 0) == 0) {
        p = parse_mpz(label.substr(2), "the prime of place '" + label + "'");
    } else {
        throw input_error("finite place '" + label + "' needs a \"prime\"");
    }
    return finite_place(p, local, field_degree, label);
}

GroupElement parse_element(const ojson& j, const PrecisionContext& ctx) {
    if (j.is_string())
        return GroupElement::from_rational(parse_rational_str(j.get<std::string>()));
    if (!j.is_object() || !j.contains("type") || !j.at("type").is_string())
        throw input_error("an element record needs a \"type\" string");
    std::string type = j.at("type").get<std::string>();
    if (type == "rational") {
        if (!j.contains("value")) throw input_error("rational element needs a \"value\"");
        return GroupElement::from_rational(parse_rational(j.at("value")));
    }
    if (type == "factored") {
        if (!j.contains("exponents") || !j.at("exponents").is_object())
            throw input_error("factored element needs an \"exponents\" object");
        std::map<mpz_class, mpq_class> exps;
        for (const auto& [key, val] : j.at("exponents").items())
            exps[parse_mpz(key, "a factored base")] = parse_rational(val);
        return GroupElement::from_exponents(exps);
    }
    if (type == "place_table") {
        if (!j.contains("field_degree"))
            throw input_error("place_table element needs a \"field_degree\"");
        int fd = get_int(j.at("field_degree"), "field_degree");
        if (!j.contains("entries") || !j.at("entries").is_array())
            throw input_error("place_table element needs an \"entries\" array");
        std::vector<std::pair<Place, LogValue>> entries;
        for (const auto& e : j.at("entries")) {
            Place pl = parse_place(e, fd);
            if (!e.contains("log_norm")) throw input_error("place entry needs a \"log_norm\"");
            LogValue lv;
            if (e.at("log_norm").is_string())
                lv = parse_log_expr(e.at("log_norm").get<std::string>());
            else
                lv = LogValue(parse_rational(e.at("log_norm")));
            entries.emplace_back(pl, lv);
        }
        mpq_class tol = GroupElement::default_product_formula_tol();
        if (j.contains("tol")) tol = parse_rational(j.at("tol"));
        return GroupElement::from_place_table(fd, std::move(entries), ctx, tol);
    }
    throw input_error("unknown element type '" + type + "'");
}

std::vector<GroupElement> parse_group(const ojson& j, const PrecisionContext& ctx) {
    const ojson* arr = nullptr;
    if (j.is_array())
        arr = &j;
    else if (j.is_object() && j.contains("generators") && j.at("generators").is_array())
        arr = &j.at("generators");
    else
        throw input_error("a group is {\"generators\":[...]} or a bare element array");
    if (arr->empty()) throw input_error("a group needs at least one generator");
    std::vector<GroupElement> gens;
    gens.reserve(arr->size());
    for (const auto& e : *arr) gens.push_back(parse_element(e, ctx));
    return gens;
}

IntMatrix parse_int_matrix(const ojson& j) {
    MatrixShape sh = matrix_shape(j);
    IntMatrix m(sh.rows, sh.cols);
    for (int i = 0; i < sh.rows; ++i)
        for (int k = 0; k < sh.cols; ++k) {
            mpq_class q = parse_rational((*sh.entries)[i][k]);
            if (q.get_den() != 1)
                throw input_error("matrix " + cell_ref(i, k) + " is not an integer");
            m.at(i, k) = q.get_num();
        }
    return m;
}

QMatrix parse_q_matrix(const ojson& j) {
    MatrixShape sh = matrix_shape(j);
    QMatrix m(sh.rows, sh.cols);
    for (int i = 0; i < sh.rows; ++i)
        for (int k = 0; k < sh.cols; ++k) m.at(i, k) = parse_rational((*sh.entries)[i][k]);
    return m;
}

ExactMatrix parse_log_matrix(const ojson& j) {
    MatrixShape sh = matrix_shape(j);
    ExactMatrix m(sh.rows, sh.cols);
    for (int i = 0; i < sh.rows; ++i)
        for (int k = 0; k < sh.cols; ++k) {
            const ojson& cell = (*sh.entries)[i][k];
            if (cell.is_string())
                m.at(i, k) = parse_log_expr(cell.get<std::string>());
            else
                m.at(i, k) = LogValue(parse_rational(cell));
        }
    return m;
}

SimpleSystem parse_simple_system(const ojson& j, const PrecisionContext& ctx) {
    if (!j.is_object() || !j.contains("masses") || !j.contains("coeffs"))
        throw input_error("a simple system is {\"masses\":[...],\"coeffs\":{matrix}}");
    if (!j.at("masses").is_array()) throw input_error("\"masses\" must be an array");
    std::vector<mpq_class> masses;
    for (const auto& v : j.at("masses")) masses.push_back(parse_rational(v));
    ExactMatrix coeffs = parse_log_matrix(j.at("coeffs"));
    return build_simple_system(std::move(masses), std::move(coeffs), ctx);
}

ZonotopeSpec parse_zonotope(const ojson& j) {
    ExactMatrix seg = parse_log_matrix(
        j.is_object() && j.contains("segments") ? j.at("segments") : j);
    ZonotopeSpec z;
    z.dim = seg.rows;
    z.segments = std::move(seg);
    return z;
}

SUnitContext parse_sunit(const ojson& j) {
    if (!j.is_object() || !j.contains("places") || !j.contains("unit_log_table"))
        throw input_error(
            "an S-unit context is {\"field_degree\":d,\"places\":[...],\"unit_log_table\":{matrix}}");
    SUnitContext c;
    c.field_degree = j.contains("field_degree") ? get_int(j.at("field_degree"), "field_degree") : 1;
    if (!j.at("places").is_array()) throw input_error("\"places\" must be an array");
    for (const auto& p : j.at("places")) c.places.push_back(parse_place(p, c.field_degree));
    c.unit_log_table = parse_log_matrix(j.at("unit_log_table"));
    return c;
}

std::string rational_str(const mpq_class& q) { return q.get_str(); }

ojson interval_json(const QInterval& x, int digits) {
    return ojson{{"lo", x.decimal_lo(digits)}, {"hi", x.decimal_hi(digits)}};
}

ojson int_vec_json(const std::vector<mpz_class>& v) {
    ojson a = ojson::array();
    for (const auto& z : v) a.push_back(z.get_str());
    return a;
}

ojson int_matrix_json(const IntMatrix& m) {
    ojson rows = ojson::array();
    for (int i = 0; i < m.rows; ++i) {
        ojson row = ojson::array();
        for (int j = 0; j < m.cols; ++j) row.push_back(m.at(i, j).get_str());
        rows.push_back(std::move(row));
    }
    return ojson{{"rows", m.rows}, {"cols", m.cols}, {"entries", std::move(rows)}};
}

ojson element_json(const GroupElement& e) {
    if (e.factored()) {
        ojson exps = ojson::object();
        for (const auto& [p, r] : e.exponents()) exps[p.get_str()] = r.get_str();
        return ojson{{"type", "factored"}, {"exponents", std::move(exps)}};
    }
    ojson entries = ojson::array();
    for (const auto& [pl, lv] : e.table())
        entries.push_back(ojson{{"place", pl.label},
                                {"local_degree", pl.local_degree},
                                {"log_norm", log_expr_str(lv)}});
    return ojson{{"type", "place_table"},
                 {"field_degree", e.field_degree()},
                 {"entries", std::move(entries)}};
}

std::string decimal_brief(const QInterval& x, int digits) {
    long bits = 64 + static_cast<long>(digits) * 4;
    mpfr_t t;
    mpfr_init2(t, bits);
    mpq_class m = x.mid();
    mpfr_set_q(t, m.get_mpq_t(), MPFR_RNDN);
    char fmt[32];
    std::snprintf(fmt, sizeof fmt, "%%.%dRNg", digits);
    std::vector<char> buf(static_cast<size_t>(digits) + 64);
    mpfr_snprintf(buf.data(), buf.size(), fmt, t);
    mpfr_clear(t);
    return std::string(buf.data());
}

} // namespace heights
