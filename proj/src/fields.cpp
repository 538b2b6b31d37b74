#include "orbvol/fields.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace orbvol {

QuadElem QuadElem::operator+(const QuadElem& o) const {
    if (m != o.m) throw std::invalid_argument("QuadElem: mixed base fields");
    return {a + o.a, b + o.b, m};
}

QuadElem QuadElem::operator-(const QuadElem& o) const {
    if (m != o.m) throw std::invalid_argument("QuadElem: mixed base fields");
    return {a - o.a, b - o.b, m};
}

QuadElem QuadElem::operator*(const QuadElem& o) const {
    if (m != o.m) throw std::invalid_argument("QuadElem: mixed base fields");
    return {a * o.a + BigRat(m) * b * o.b, a * o.b + b * o.a, m};
}

QuadElem QuadElem::inverse() const {
    BigRat n = norm_to_q();
    if (n == 0) throw std::invalid_argument("QuadElem: not invertible");
    return {a / n, -b / n, m};
}

int QuadElem::sign_at(bool positive_sqrt) const {
    if (m < 0) throw std::invalid_argument("QuadElem::sign_at: no real embedding for m < 0");
    BigRat bb = positive_sqrt ? b : -b;
    int sa = sgn(a), sb = sgn(bb);
    if (sb == 0) return sa;
    if (sa == 0) return sb;
    if (sa == sb) return sa;
    // |a| vs |b| sqrt(m): compare a^2 with m b^2
    int st = sgn(a * a - BigRat(m) * bb * bb);
    if (st == 0) throw std::logic_error("QuadElem::sign_at: sqrt(m) rational");
    return sa * st;
}

std::string QuadElem::to_string() const {
    std::ostringstream out;
    out << a.get_str();
    if (b != 0) out << (sgn(b) >= 0 ? "+" : "") << b.get_str() << "*sqrt(" << m << ")";
    return out.str();
}

TowerElement TowerElement::operator*(const TowerElement& o) const {
    if (!(alpha == o.alpha)) throw std::invalid_argument("TowerElement: mixed towers");
    TowerElement r;
    r.alpha = alpha;
    r.u = u * o.u + alpha * (v * o.v);
    r.v = u * o.v + v * o.u;
    return r;
}

TowerElement TowerElement::operator-() const {
    TowerElement r = *this;
    r.u = QuadElem(-u.a, -u.b, u.m);
    r.v = QuadElem(-v.a, -v.b, v.m);
    return r;
}

TowerElement TowerElement::conj_radical() const {
    TowerElement r = *this;
    r.v = QuadElem(-v.a, -v.b, v.m);
    return r;
}

TowerElement TowerElement::pow(unsigned e) const {
    TowerElement acc = one(alpha);
    TowerElement base = *this;
    while (e) {
        if (e & 1) acc = acc * base;
        base = base * base;
        e >>= 1;
    }
    return acc;
}

TowerElement TowerElement::one(const QuadElem& alpha) {
    TowerElement r;
    r.alpha = alpha;
    r.u = QuadElem::rational(BigRat(1), alpha.m);
    r.v = QuadElem::rational(BigRat(0), alpha.m);
    return r;
}

int TowerElement::sign_at(bool positive_sqrt_alpha) const {
    // real embeddings of l live over the base embedding where alpha > 0
    bool base_branch;
    int sp = alpha.sign_at(true);
    int sm = alpha.sign_at(false);
    if (sp > 0 && sm < 0) base_branch = true;
    else if (sp < 0 && sm > 0) base_branch = false;
    else throw std::invalid_argument("TowerElement::sign_at: alpha is not of mixed sign");

    QuadElem w = positive_sqrt_alpha ? v : QuadElem(-v.a, -v.b, v.m);
    int su = u.sign_at(base_branch), sw = w.sign_at(base_branch);
    if (sw == 0) return su;
    if (su == 0) return sw;
    if (su == sw) return su;
    QuadElem t = u * u - alpha * (w * w);
    int st = t.sign_at(base_branch);
    if (st == 0) throw std::logic_error("TowerElement::sign_at: sqrt(alpha) lies in the base field");
    return su * st;
}

std::string TowerElement::to_string() const {
    std::ostringstream out;
    out << "(" << u.to_string() << ") + (" << v.to_string() << ")*sqrt(alpha)";
    return out.str();
}

QuadElem tower_norm(const TowerElement& x) {
    TowerElement p = x * x.conj_radical();
    if (!p.v.is_zero()) throw std::logic_error("tower_norm: radical part did not cancel");
    return p.u;
}

std::int64_t NumberField::quadratic_disc_signed() const {
    if (degree != 2) throw std::invalid_argument("quadratic_disc_signed: field is not quadratic");
    if (!disc.fits_slong_p()) throw std::invalid_argument("quadratic_disc_signed: discriminant too large");
    std::int64_t d = disc.get_si();
    return s1 == 2 ? d : -d;
}

SplittingType NumberField::splitting_at(std::uint64_t p) const {
    auto it = split_override.find(p);
    if (it != split_override.end()) return it->second;
    if (degree == 1) return SplittingType{{{1, 1}}};
    if (degree == 2) {
        // the Kronecker symbol gives the exact answer for every p, with no
        // dependence on the defining polynomial's index
        int k = kronecker_symbol(quadratic_disc_signed(), p);
        if (k == 1) return SplittingType{{{1, 1}, {1, 1}}};
        if (k == -1) return SplittingType{{{2, 1}}};
        return SplittingType{{{1, 2}}};
    }
    if (!poly)
        throw std::invalid_argument("splitting_at: field " + label + " has no defining polynomial");
    SplittingType st = splitting_type_mod_p(*poly, p);
    if (!st.squarefree() && disc % BigInt(static_cast<unsigned long>(p)) != 0)
        throw std::invalid_argument("splitting_at: " + label + " needs a split-override at p=" +
                                    std::to_string(p) + " (index divisible by p)");
    return st;
}

std::string form_kind_name(FormKind k) {
    switch (k) {
        case FormKind::Inner: return "inner";
        case FormKind::OuterQuadratic: return "outer-quadratic";
        case FormKind::Triality: return "triality";
    }
    return "?";
}

FieldPair FieldPair::inner(const NumberField& k) {
    FieldPair p;
    p.k = k;
    p.l = k;
    p.form_kind = FormKind::Inner;
    p.rel_degree = 1;
    return p;
}

namespace {

void check_extension(const NumberField& k, const NumberField& l, int rel) {
    if (l.degree != rel * k.degree)
        throw std::invalid_argument("field pair " + k.label + "/" + l.label +
                                    ": degree is not " + std::to_string(rel) + "*[k:Q]");
    BigInt dk_pow = 1;
    for (int i = 0; i < rel; ++i) dk_pow *= k.disc;
    if (l.disc < dk_pow)
        throw std::invalid_argument("field pair " + k.label + "/" + l.label +
                                    ": disc(l) < disc(k)^" + std::to_string(rel));
}

}  // namespace

FieldPair FieldPair::outer(const NumberField& k, const NumberField& l) {
    check_extension(k, l, 2);
    FieldPair p;
    p.k = k;
    p.l = l;
    p.form_kind = FormKind::OuterQuadratic;
    p.rel_degree = 2;
    return p;
}

FieldPair FieldPair::triality(const NumberField& k, const NumberField& l) {
    check_extension(k, l, 3);
    FieldPair p;
    p.k = k;
    p.l = l;
    p.form_kind = FormKind::Triality;
    p.rel_degree = 3;
    return p;
}

// ---------------------------------------------------------------------------
// real roots by Sturm sequences over exact rationals

namespace {

using RatPoly = std::vector<BigRat>;

void rtrim(RatPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

int rdeg(const RatPoly& p) { return static_cast<int>(p.size()) - 1; }

BigRat reval(const RatPoly& p, const BigRat& x) {
    BigRat acc(0);
    for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
    return acc;
}

RatPoly rderiv(const RatPoly& p) {
    RatPoly d;
    for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * BigRat(static_cast<long>(i)));
    rtrim(d);
    return d;
}

RatPoly rrem(RatPoly a, const RatPoly& b) {
    rtrim(a);
    int db = rdeg(b);
    while (rdeg(a) >= db) {
        BigRat c = a.back() / b.back();
        int shift = rdeg(a) - db;
        for (int i = 0; i <= db; ++i) a[i + shift] -= c * b[i];
        a.pop_back();
        rtrim(a);
    }
    return a;
}

std::vector<RatPoly> sturm_chain(const RatPoly& f) {
    std::vector<RatPoly> chain{f, rderiv(f)};
    rtrim(chain[0]);
    rtrim(chain[1]);
    while (rdeg(chain.back()) > 0) {
        RatPoly r = rrem(chain[chain.size() - 2], chain.back());
        if (r.empty()) break;
        for (auto& c : r) c = -c;
        chain.push_back(std::move(r));
    }
    return chain;
}

int sign_variations(const std::vector<RatPoly>& chain, const BigRat& x) {
    int vars = 0, prev = 0;
    for (const auto& p : chain) {
        int s = sgn(reval(p, x));
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++vars;
        prev = s;
    }
    return vars;
}

}  // namespace

std::vector<double> real_roots(const PolyZ& f, double tol) {
    if (f.degree() < 1) return {};
    if (!(tol > 0)) throw std::invalid_argument("real_roots: tol must be positive");
    RatPoly rf(f.coeffs.size());
    for (std::size_t i = 0; i < f.coeffs.size(); ++i) rf[i] = BigRat(f.coeffs[i]);
    auto chain = sturm_chain(rf);
    if (rdeg(chain.back()) > 0)
        throw std::invalid_argument("real_roots: polynomial is not squarefree");

    // Cauchy bound
    BigRat maxc(0);
    for (int i = 0; i < f.degree(); ++i) {
        BigRat a = abs(BigRat(f.coeffs[i]) / BigRat(f.coeffs.back()));
        if (a > maxc) maxc = a;
    }
    BigRat bound = maxc + 1;

    struct Interval { BigRat lo, hi; int count; };
    std::vector<Interval> stack{{-bound, bound,
                                 sign_variations(chain, -bound) - sign_variations(chain, bound)}};
    std::vector<std::pair<BigRat, BigRat>> isolated;
    while (!stack.empty()) {
        Interval iv = stack.back();
        stack.pop_back();
        if (iv.count == 0) continue;
        if (iv.count == 1) {
            isolated.emplace_back(iv.lo, iv.hi);
            continue;
        }
        BigRat mid = (iv.lo + iv.hi) / 2;
        int left = sign_variations(chain, iv.lo) - sign_variations(chain, mid);
        stack.push_back({iv.lo, mid, left});
        stack.push_back({mid, iv.hi, iv.count - left});
    }

    std::vector<double> roots;
    for (auto& [lo, hi] : isolated) {
        int vlo = sign_variations(chain, lo);
        while (BigRat(hi - lo).get_d() > tol * 0.5) {
            BigRat mid = (lo + hi) / 2;
            int vmid = sign_variations(chain, mid);
            if (vlo - vmid == 1) hi = mid;
            else { lo = mid; vlo = vmid; }
        }
        roots.push_back(BigRat((lo + hi) / 2).get_d());
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

std::vector<double> real_embeddings(const NumberField& f, double tol) {
    if (!f.poly)
        throw std::invalid_argument("real_embeddings: field " + f.label +
                                    " has no defining polynomial");
    auto roots = real_roots(*f.poly, tol);
    if (static_cast<int>(roots.size()) != f.s1)
        throw std::invalid_argument("real_embeddings: field " + f.label + " has " +
                                    std::to_string(roots.size()) + " real roots, expected s1=" +
                                    std::to_string(f.s1));
    return roots;
}

// ---------------------------------------------------------------------------
// field table

const NumberField& FieldTable::by_label(const std::string& label) const {
    const NumberField* f = find(label);
    if (!f) {
        std::ostringstream msg;
        msg << "unknown field label '" << label << "'; available:";
        for (const auto& r : records_) msg << " " << r.label;
        throw std::invalid_argument(msg.str());
    }
    return *f;
}

const NumberField* FieldTable::find(const std::string& label) const {
    for (const auto& r : records_)
        if (r.label == label) return &r;
    return nullptr;
}

const NumberField* FieldTable::find_by_disc(int degree, const BigInt& disc_abs, bool imaginary) const {
    for (const auto& r : records_)
        if (r.degree == degree && r.disc == disc_abs && (r.s2 > 0) == imaginary) return &r;
    return nullptr;
}

std::vector<std::string> FieldTable::labels() const {
    std::vector<std::string> out;
    out.reserve(records_.size());
    for (const auto& r : records_) out.push_back(r.label);
    return out;
}

void FieldTable::add(NumberField f) {
    if (find(f.label)) throw std::invalid_argument("duplicate field label " + f.label);
    records_.push_back(std::move(f));
}

namespace {

std::vector<std::string> split_on(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep)) out.push_back(cur);
    return out;
}

BigRat parse_rat(const std::string& s) {
    BigRat q;
    if (q.set_str(s, 10) != 0) throw std::invalid_argument("bad rational '" + s + "'");
    q.canonicalize();
    return q;
}

TowerElement parse_unit(const std::string& spec, const TowerData& tower) {
    auto parts = split_on(spec, ',');
    if (parts.size() != 4) throw std::invalid_argument("unit needs 4 components, got '" + spec + "'");
    TowerElement t;
    t.alpha = tower.alpha;
    t.u = QuadElem(parse_rat(parts[0]), parse_rat(parts[1]), tower.m);
    t.v = QuadElem(parse_rat(parts[2]), parse_rat(parts[3]), tower.m);
    return t;
}

void validate_record(NumberField& f) {
    if (f.degree < 1) throw std::invalid_argument("degree must be >= 1");
    if (f.s1 < 0 || f.s2 < 0 || f.s1 + 2 * f.s2 != f.degree)
        throw std::invalid_argument("signature (" + std::to_string(f.s1) + "," +
                                    std::to_string(f.s2) + ") inconsistent with degree " +
                                    std::to_string(f.degree));
    if (sgn(f.disc) <= 0) throw std::invalid_argument("disc must be positive (absolute value)");
    if (f.class_number && *f.class_number < 1)
        throw std::invalid_argument("class number must be >= 1");
    if (f.poly) {
        if (f.poly->degree() != f.degree)
            throw std::invalid_argument("poly degree " + std::to_string(f.poly->degree()) +
                                        " != field degree");
        if (!f.poly->is_monic()) throw std::invalid_argument("defining polynomial must be monic");
        real_embeddings(f, 1e-9);  // validates the real-root count
    }
    if (f.tower) {
        int sp = f.tower->alpha.sign_at(true), sm = f.tower->alpha.sign_at(false);
        if (f.degree == 4 && !(sp * sm < 0))
            throw std::invalid_argument("tower radicand must change sign across base embeddings");
    }
    for (const auto& t : f.fund_units) {
        BigRat n = tower_norm(t).norm_to_q();
        if (!(n == 1 || n == -1))
            throw std::invalid_argument("listed unit is not a unit (|norm| != 1)");
    }
}

NumberField parse_record(const std::string& line) {
    auto cols = split_on(line, '\t');
    // allow runs of tabs from aligned tables
    cols.erase(std::remove_if(cols.begin(), cols.end(),
                              [](const std::string& s) { return s.empty(); }),
               cols.end());
    if (cols.size() < 7) throw std::invalid_argument("expected at least 7 columns");
    NumberField f;
    f.label = cols[0];
    f.degree = std::stoi(cols[1]);
    f.s1 = std::stoi(cols[2]);
    f.s2 = std::stoi(cols[3]);
    f.disc = BigInt(cols[4]);
    if (cols[5] != "?") f.class_number = std::stol(cols[5]);
    if (cols[6] != "?") f.poly = PolyZ::parse_csv(cols[6]);
    for (std::size_t i = 7; i < cols.size(); ++i) {
        const std::string& c = cols[i];
        if (c.rfind("tower:", 0) == 0) {
            auto parts = split_on(c.substr(6), ',');
            if (parts.size() != 3) throw std::invalid_argument("tower needs m,alpha_a,alpha_b");
            TowerData t;
            t.m = std::stoll(parts[0]);
            t.alpha = QuadElem(parse_rat(parts[1]), parse_rat(parts[2]), t.m);
            f.tower = t;
        } else if (c.rfind("units:", 0) == 0) {
            TowerData td;
            if (f.tower) {
                td = *f.tower;
            } else if (f.degree == 2 && f.s1 == 2) {
                // base-field unit of a real quadratic field; radicand from the disc
                if (!f.disc.fits_slong_p()) throw std::invalid_argument("disc too large");
                std::int64_t d0 = f.disc.get_si();
                td.m = d0 % 4 == 0 ? d0 / 4 : d0;
                td.alpha = QuadElem(BigRat(0), BigRat(0), td.m);
            } else {
                throw std::invalid_argument("units need tower data or a real quadratic base");
            }
            for (const auto& u : split_on(c.substr(6), ';'))
                f.fund_units.push_back(parse_unit(u, td));
        } else if (c.rfind("over:", 0) == 0) {
            f.over_label = c.substr(5);
        } else if (c.rfind("sigma0:", 0) == 0) {
            f.sigma0 = std::stoi(c.substr(7));
            if (f.sigma0 != 0 && f.sigma0 != 1)
                throw std::invalid_argument("sigma0 must be 0 or 1");
        } else if (c.rfind("split-override:", 0) == 0) {
            for (const auto& entry : split_on(c.substr(15), ';')) {
                auto eq = entry.find('=');
                if (eq == std::string::npos) throw std::invalid_argument("bad split-override");
                std::uint64_t p = std::stoull(entry.substr(0, eq));
                SplittingType st;
                for (const auto& fe : split_on(entry.substr(eq + 1), ',')) {
                    auto caret = fe.find('^');
                    if (caret == std::string::npos) throw std::invalid_argument("bad f^e entry");
                    st.factors.emplace_back(std::stoi(fe.substr(0, caret)),
                                            std::stoi(fe.substr(caret + 1)));
                }
                std::sort(st.factors.begin(), st.factors.end());
                if (st.degree_sum() != f.degree)
                    throw std::invalid_argument("split-override degrees do not sum to field degree");
                f.split_override[p] = st;
            }
        } else {
            throw std::invalid_argument("unknown column '" + c + "'");
        }
    }
    validate_record(f);
    return f;
}

}  // namespace

FieldTable parse_field_table(std::istream& in) {
    FieldTable table;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        while (!line.empty() && (line.back() == ' ' || line.back() == '\r' || line.back() == '\t'))
            line.pop_back();
        if (line.empty()) continue;
        try {
            table.add(parse_record(line));
        } catch (const std::invalid_argument& e) {
            throw std::invalid_argument("field table line " + std::to_string(lineno) + ": " +
                                        e.what());
        }
    }
    return table;
}

FieldTable parse_field_table_string(const std::string& text) {
    std::istringstream in(text);
    return parse_field_table(in);
}

const FieldTable& builtin_table() {
    static const FieldTable table = parse_field_table_string(builtin_table_text());
    return table;
}

// ---------------------------------------------------------------------------
// unit-image computations

bool is_unit_nc_power(const QuadElem& u, const QuadElem& eps, int nc, int exponent_bound) {
    if (nc != 2 && nc != 4) throw std::invalid_argument("is_unit_nc_power: nc must be 2 or 4");
    BigRat n = u.norm_to_q();
    if (!(n == 1 || n == -1))
        throw std::invalid_argument("is_unit_nc_power: u is not a unit");
    QuadElem one = QuadElem::rational(BigRat(1), u.m);
    QuadElem minus_one = QuadElem::rational(BigRat(-1), u.m);
    QuadElem pos = one, inv = eps.inverse(), neg = one;
    for (int t = 0; t <= exponent_bound; ++t) {
        if (u == pos || u == neg) {
            // u = eps^{+-t}; a +-nc-th power iff sign is + and t % nc == 0
            return t % nc == 0;
        }
        if ((u == minus_one * pos) || (u == minus_one * neg)) return false;
        pos = pos * eps;
        neg = neg * inv;
    }
    throw std::invalid_argument("is_unit_nc_power: u is not +-eps^t for |t| <= " +
                                std::to_string(exponent_bound));
}

UnitCondition unit_condition_from_name(const std::string& name) {
    if (name == "odd-rank-compact") return UnitCondition::OddRankCompact;
    if (name == "even-rank-compact") return UnitCondition::EvenRankCompact;
    if (name == "noncompact-even") return UnitCondition::NoncompactEven;
    if (name == "imaginary-square") return UnitCondition::ImaginarySquare;
    throw std::invalid_argument("unknown unit condition '" + name + "'");
}

namespace {

QuadElem base_unit(const NumberField& k) {
    if (k.fund_units.empty())
        throw std::invalid_argument("field " + k.label + " carries no fundamental unit");
    const TowerElement& t = k.fund_units[0];
    if (!t.v.is_zero())
        throw std::invalid_argument("field " + k.label + ": base unit has a radical part");
    return t.u;
}

int torsion_order(const NumberField& l) {
    if (l.degree != 2 || l.s1 != 0)
        throw std::invalid_argument("torsion_order: field is not imaginary quadratic");
    if (l.disc == 3) return 6;
    if (l.disc == 4) return 4;
    return 2;
}

}  // namespace

bool unit_satisfies(const FieldPair& pair, const TowerElement& x, bool negated,
                    UnitCondition cond, int nc) {
    switch (cond) {
        case UnitCondition::OddRankCompact: {
            QuadElem n = tower_norm(x);  // sign-independent
            if (!is_unit_nc_power(n, base_unit(pair.k), nc)) return false;
            int s = x.sign_at(pair.l.sigma0 == 1);
            return (negated ? -s : s) > 0;
        }
        case UnitCondition::EvenRankCompact: {
            int sp = x.sign_at(true), sm = x.sign_at(false);
            if (negated) { sp = -sp; sm = -sm; }
            return sp > 0 && sm > 0;
        }
        case UnitCondition::NoncompactEven:
        case UnitCondition::ImaginarySquare:
            throw std::invalid_argument("unit_satisfies: torsion cases have no representatives");
    }
    return false;
}

int unit_image_order(const FieldPair& pair, int nc, UnitCondition cond) {
    if (nc != 2 && nc != 4) throw std::invalid_argument("unit_image_order: nc must be 2 or 4");
    if (cond == UnitCondition::NoncompactEven || cond == UnitCondition::ImaginarySquare) {
        // rank-0 unit group: cyclic torsion of order w, #(mu / mu^nc) = gcd(nc, w)
        return std::gcd(nc, torsion_order(pair.l));
    }
    if (!pair.l.tower) throw std::invalid_argument("unit_image_order: field " + pair.l.label +
                                                   " has no tower data");
    if (pair.l.fund_units.size() != 2)
        throw std::invalid_argument("unit_image_order: field " + pair.l.label +
                                    " needs two fundamental units");
    const TowerElement& t1 = pair.l.fund_units[0];
    const TowerElement& t2 = pair.l.fund_units[1];

    // the 2 nc^2 representatives must be pairwise distinct (torsion is +-1 and
    // -1 is not an nc-th power); assert rather than assume
    std::vector<TowerElement> reps;
    for (int i = 0; i < nc; ++i)
        for (int j = 0; j < nc; ++j) {
            TowerElement x = t1.pow(i) * t2.pow(j);
            reps.push_back(x);
            reps.push_back(-x);
        }
    for (std::size_t i = 0; i < reps.size(); ++i)
        for (std::size_t j = i + 1; j < reps.size(); ++j)
            if (reps[i] == reps[j])
                throw std::logic_error("unit_image_order: coset representatives are not distinct");

    int count = 0;
    for (int i = 0; i < nc; ++i) {
        for (int j = 0; j < nc; ++j) {
            TowerElement x = t1.pow(i) * t2.pow(j);
            if (unit_satisfies(pair, x, false, cond, nc) ||
                unit_satisfies(pair, x, true, cond, nc))
                ++count;
        }
    }
    return count;
}

}  // namespace orbvol
