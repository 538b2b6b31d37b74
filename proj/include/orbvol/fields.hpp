#ifndef ORBVOL_FIELDS_HPP
#define ORBVOL_FIELDS_HPP

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "orbvol/arith.hpp"

namespace orbvol {

// Element a + b*sqrt(m) of a quadratic field, exact.
struct QuadElem {
    BigRat a, b;
    std::int64_t m = 0;  // radicand of the base field (0 for plain rationals)

    QuadElem() = default;
    QuadElem(BigRat a_, BigRat b_, std::int64_t m_) : a(std::move(a_)), b(std::move(b_)), m(m_) {}
    static QuadElem rational(const BigRat& r, std::int64_t m) { return {r, BigRat(0), m}; }

    QuadElem operator+(const QuadElem& o) const;
    QuadElem operator-(const QuadElem& o) const;
    QuadElem operator*(const QuadElem& o) const;
    QuadElem conj() const { return {a, -b, m}; }
    QuadElem inverse() const;
    bool operator==(const QuadElem& o) const { return a == o.a && b == o.b && m == o.m; }
    bool is_zero() const { return a == 0 && b == 0; }
    BigRat norm_to_q() const { return a * a - BigRat(m) * b * b; }
    // exact sign at the embedding sqrt(m) -> +sqrt(m) (or -sqrt(m))
    int sign_at(bool positive_sqrt = true) const;
    std::string to_string() const;
};

// Element u + v*sqrt(alpha) of a quadratic tower l = k(sqrt(alpha)),
// k = Q(sqrt(m)).  The imaginary-quadratic degenerate case (l imaginary
// quadratic over k = Q) is carried as m < 0 with zero b/d components.
struct TowerElement {
    QuadElem u, v;       // base part, radical part
    QuadElem alpha;      // the radicand, an element of k

    TowerElement operator*(const TowerElement& o) const;
    TowerElement operator-() const;
    TowerElement conj_radical() const;  // sqrt(alpha) -> -sqrt(alpha)
    TowerElement pow(unsigned e) const;
    bool operator==(const TowerElement& o) const { return u == o.u && v == o.v; }
    static TowerElement one(const QuadElem& alpha);

    // Exact sign at the real embedding of l given by the base embedding where
    // alpha is positive and the chosen branch of sqrt(alpha).
    int sign_at(bool positive_sqrt_alpha) const;
    std::string to_string() const;
};

// N_{l|k}: x * conj(x), radical component cancels.
QuadElem tower_norm(const TowerElement& x);

struct TowerData {
    std::int64_t m = 0;   // base radicand; k = Q(sqrt m)
    QuadElem alpha;       // l = k(sqrt alpha)
};

struct NumberField {
    std::string label;
    int degree = 0;
    int s1 = 0, s2 = 0;           // real embeddings, complex pairs
    BigInt disc;                  // absolute value of the field discriminant
    std::optional<PolyZ> poly;    // monic defining polynomial, when known
    std::optional<long> class_number;
    double regulator_lb = 0.25;
    std::optional<TowerData> tower;
    std::vector<TowerElement> fund_units;
    int sigma0 = 1;               // distinguished real place: branch index of sqrt(alpha)
    std::map<std::uint64_t, SplittingType> split_override;
    std::optional<std::string> over_label;  // base field, for extensions of non-quadratic bases

    bool totally_real() const { return s2 == 0; }
    bool is_rationals() const { return degree == 1; }
    // signed discriminant of a quadratic field
    std::int64_t quadratic_disc_signed() const;
    // residue degrees/multiplicities of the rational prime p in this field
    SplittingType splitting_at(std::uint64_t p) const;
};

enum class FormKind { Inner, OuterQuadratic, Triality };

std::string form_kind_name(FormKind k);

struct FieldPair {
    NumberField k;
    NumberField l;
    FormKind form_kind = FormKind::Inner;
    int rel_degree = 1;

    static FieldPair inner(const NumberField& k);
    static FieldPair outer(const NumberField& k, const NumberField& l);
    static FieldPair triality(const NumberField& k, const NumberField& l);
};

// All real roots of the defining polynomial, ascending, to absolute accuracy
// tol; validates that the count equals s1.
std::vector<double> real_embeddings(const NumberField& f, double tol = 1e-12);

// Real roots of a squarefree integer polynomial (Sturm isolation + bisection).
std::vector<double> real_roots(const PolyZ& f, double tol);

class FieldTable {
public:
    const NumberField& by_label(const std::string& label) const;
    const NumberField* find(const std::string& label) const;
    const NumberField* find_by_disc(int degree, const BigInt& disc_abs, bool imaginary) const;
    const std::vector<NumberField>& records() const { return records_; }
    std::vector<std::string> labels() const;
    void add(NumberField f);

private:
    std::vector<NumberField> records_;
};

// Parse the tab-separated field-table format.  Throws std::invalid_argument
// with a line number on malformed input or failed invariant checks.
FieldTable parse_field_table(std::istream& in);
FieldTable parse_field_table_string(const std::string& text);

// The curated table compiled into the library.
const FieldTable& builtin_table();
const std::string& builtin_table_text();

// True iff u (a unit of k) equals +eps^(nc*j) for some integer j; searches
// exponents up to +/-200 and throws if u is not +/- a power of eps.
bool is_unit_nc_power(const QuadElem& u, const QuadElem& eps, int nc, int exponent_bound = 200);

enum class UnitCondition {
    OddRankCompact,    // norm in (k*)^nc and positive at the distinguished place
    EvenRankCompact,   // positive at both real places away from v0
    NoncompactEven,    // imaginary quadratic over Q: torsion only
    ImaginarySquare,   // same torsion computation, nc = 2
};

UnitCondition unit_condition_from_name(const std::string& name);

// Whether a specific unit x of l satisfies the membership condition.
bool unit_satisfies(const FieldPair& pair, const TowerElement& x, bool negated,
                    UnitCondition cond, int nc);

// #(U_A / U_l^nc): count of coset representatives +/- tau1^i tau2^j
// satisfying the condition; torsion order for the rank-0 cases.
int unit_image_order(const FieldPair& pair, int nc, UnitCondition cond);

}  // namespace orbvol

#endif
