#include "lucasq/numfield.hpp"

#include <algorithm>
#include <stdexcept>

namespace lucasq {

namespace {

using QMatrix = std::vector<std::vector<mpq_class>>;

// Determinant by fraction-exact Gaussian elimination.
mpq_class determinant(QMatrix m) {
    const std::size_t n = m.size();
    mpq_class det = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        while (piv < n && m[piv][c] == 0) ++piv;
        if (piv == n) return 0;
        if (piv != c) {
            std::swap(m[piv], m[c]);
            det = -det;
        }
        det *= m[c][c];
        for (std::size_t r = c + 1; r < n; ++r) {
            if (m[r][c] == 0) continue;
            const mpq_class f = m[r][c] / m[c][c];
            for (std::size_t k = c; k < n; ++k) m[r][k] -= f * m[c][k];
        }
    }
    return det;
}

// Solve m x = rhs; m nonsingular.
std::vector<mpq_class> solve(QMatrix m, std::vector<mpq_class> rhs) {
    const std::size_t n = m.size();
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        while (piv < n && m[piv][c] == 0) ++piv;
        if (piv == n) throw std::domain_error("singular system");
        std::swap(m[piv], m[c]);
        std::swap(rhs[piv], rhs[c]);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c || m[r][c] == 0) continue;
            const mpq_class f = m[r][c] / m[c][c];
            for (std::size_t k = c; k < n; ++k) m[r][k] -= f * m[c][k];
            rhs[r] -= f * rhs[c];
        }
    }
    for (std::size_t i = 0; i < n; ++i) rhs[i] /= m[i][i];
    return rhs;
}

// Rational polynomials, low to high, trimmed.
using QPoly = std::vector<mpq_class>;

void trim(QPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

mpq_class eval(const QPoly& p, const mpq_class& x) {
    mpq_class r = 0;
    for (auto it = p.rbegin(); it != p.rend(); ++it) r = r * x + *it;
    return r;
}

QPoly remainder(QPoly a, const QPoly& b) {
    trim(a);
    while (a.size() >= b.size() && !a.empty()) {
        const mpq_class f = a.back() / b.back();
        const std::size_t shift = a.size() - b.size();
        for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] -= f * b[i];
        trim(a);
    }
    return a;
}

std::vector<QPoly> sturm_chain(const QPoly& f) {
    std::vector<QPoly> chain{f};
    QPoly d;
    for (std::size_t i = 1; i < f.size(); ++i) d.push_back(f[i] * static_cast<long>(i));
    trim(d);
    if (d.empty()) return chain;
    chain.push_back(d);
    while (true) {
        QPoly r = remainder(chain[chain.size() - 2], chain.back());
        if (r.empty()) break;
        for (auto& c : r) c = -c;
        chain.push_back(std::move(r));
    }
    return chain;
}

int sign_changes(const std::vector<QPoly>& chain, const mpq_class& x) {
    int changes = 0, last = 0;
    for (const auto& p : chain) {
        const int s = sgn(eval(p, x));
        if (s == 0) continue;
        if (last != 0 && s != last) ++changes;
        last = s;
    }
    return changes;
}

RealInterval imul(const RealInterval& a, const RealInterval& b) {
    const mpq_class c[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
    RealInterval r{c[0], c[0]};
    for (const auto& v : c) {
        if (v < r.lo) r.lo = v;
        if (v > r.hi) r.hi = v;
    }
    return r;
}

RealInterval evaluate_at(const NfElement& a, const RealInterval& root) {
    RealInterval acc{0, 0};
    RealInterval pw{1, 1};
    for (std::size_t i = 0; i < a.coords().size(); ++i) {
        if (i > 0) pw = imul(pw, root);
        const mpq_class& c = a.coords()[i];
        if (sgn(c) >= 0) {
            acc.lo += c * pw.lo;
            acc.hi += c * pw.hi;
        } else {
            acc.lo += c * pw.hi;
            acc.hi += c * pw.lo;
        }
    }
    return acc;
}

// Polynomials over F_p, low to high.
using ModPoly = std::vector<long>;

bool divides_mod(const ModPoly& d, ModPoly a, long p) {
    // d monic
    while (a.size() >= d.size()) {
        const long f = a.back();
        const std::size_t shift = a.size() - d.size();
        for (std::size_t i = 0; i < d.size(); ++i) {
            a[i + shift] = ((a[i + shift] - f * d[i]) % p + p) % p;
        }
        a.pop_back();
    }
    return std::all_of(a.begin(), a.end(), [](long c) { return c == 0; });
}

}  // namespace

NumberField::NumberField(std::string name, std::vector<mpz_class> min_poly)
    : name_(std::move(name)), min_poly_(std::move(min_poly)) {
    if (min_poly_.size() < 2 || min_poly_.back() != 1) {
        throw std::invalid_argument("NumberField: min_poly must be monic of degree >= 1");
    }
    degree_ = static_cast<int>(min_poly_.size()) - 1;
}

NumberField NumberField::from_json(const nlohmann::json& j) {
    std::vector<mpz_class> poly;
    for (const auto& c : j.at("min_poly")) poly.emplace_back(c.get<long>());
    NumberField f(j.at("name").get<std::string>(), std::move(poly));
    auto parse_coords = [&](const nlohmann::json& arr) {
        std::vector<mpq_class> v;
        for (const auto& c : arr) {
            mpq_class q(c.is_string() ? c.get<std::string>() : std::to_string(c.get<long>()));
            q.canonicalize();
            v.push_back(q);
        }
        if (static_cast<int>(v.size()) != f.degree_) {
            throw std::invalid_argument("field " + f.name_ + ": coordinate vector has wrong length");
        }
        return v;
    };
    if (j.contains("units")) {
        for (const auto& u : j.at("units")) {
            f.units_.push_back({u.at("label").get<std::string>(), parse_coords(u.at("coords"))});
        }
    }
    if (j.contains("sigma_images") && !j.at("sigma_images").is_null()) {
        for (const auto& img : j.at("sigma_images")) f.sigma_images_.push_back(parse_coords(img));
        if (static_cast<int>(f.sigma_images_.size()) != f.degree_) {
            throw std::invalid_argument("field " + f.name_ + ": sigma needs one image per basis vector");
        }
    }
    if (j.contains("annotations")) {
        for (const auto& a : j.at("annotations")) f.annotations_.push_back(a.get<std::string>());
    }
    return f;
}

NfElement NumberField::element(std::vector<mpq_class> coords) const {
    return NfElement(this, std::move(coords));
}

NfElement NumberField::from_ints(std::initializer_list<long> coords) const {
    std::vector<mpq_class> v(static_cast<std::size_t>(degree_));
    std::size_t i = 0;
    for (long c : coords) {
        if (i >= v.size()) throw std::invalid_argument("from_ints: too many coordinates");
        v[i++] = c;
    }
    return NfElement(this, std::move(v));
}

NfElement NumberField::scalar(const mpq_class& c) const {
    std::vector<mpq_class> v(static_cast<std::size_t>(degree_));
    v[0] = c;
    return NfElement(this, std::move(v));
}

NfElement NumberField::zero() const { return scalar(0); }
NfElement NumberField::one() const { return scalar(1); }

NfElement NumberField::generator() const {
    std::vector<mpq_class> v(static_cast<std::size_t>(degree_));
    if (degree_ == 1) {
        v[0] = -mpq_class(min_poly_[0]);
    } else {
        v[1] = 1;
    }
    return NfElement(this, std::move(v));
}

NfElement NumberField::unit(const std::string& label) const {
    for (const auto& u : units_) {
        if (u.label == label) return element(u.coords);
    }
    throw std::out_of_range("field " + name_ + " has no unit " + label);
}

std::vector<RealInterval> NumberField::real_roots(int bits) const {
    QPoly f;
    for (const auto& c : min_poly_) f.emplace_back(c);
    const auto chain = sturm_chain(f);
    mpq_class bound = 1;
    for (const auto& c : min_poly_) bound = std::max(bound, mpq_class(mpq_class(abs(c)) + 1));

    std::vector<RealInterval> isolated;
    std::vector<RealInterval> work{{-bound, bound}};
    while (!work.empty()) {
        RealInterval iv = work.back();
        work.pop_back();
        const int count = sign_changes(chain, iv.lo) - sign_changes(chain, iv.hi);
        if (count == 0) continue;
        if (count == 1) {
            isolated.push_back(iv);
            continue;
        }
        mpq_class mid = (iv.lo + iv.hi) / 2;
        if (eval(f, mid) == 0) isolated.push_back({mid, mid});
        work.push_back({iv.lo, mid});
        work.push_back({mid, iv.hi});
    }
    const mpq_class target = mpq_class(1, 1) / mpq_class(mpz_class(1) << bits);
    for (auto& iv : isolated) {
        if (iv.lo == iv.hi) continue;
        int slo = sgn(eval(f, iv.lo));
        if (slo == 0) {
            iv.hi = iv.lo;
            continue;
        }
        if (sgn(eval(f, iv.hi)) == 0) {
            iv.lo = iv.hi;
            continue;
        }
        while (iv.width() >= target) {
            mpq_class mid = (iv.lo + iv.hi) / 2;
            const int sm = sgn(eval(f, mid));
            if (sm == 0) {
                iv.lo = iv.hi = mid;
                break;
            }
            if (sm == slo) {
                iv.lo = mid;
            } else {
                iv.hi = mid;
            }
        }
    }
    std::sort(isolated.begin(), isolated.end(),
              [](const RealInterval& a, const RealInterval& b) { return a.lo < b.lo; });
    return isolated;
}

bool NumberField::irreducible_mod(unsigned long p) const {
    const long lp = static_cast<long>(p);
    ModPoly f;
    for (const auto& c : min_poly_) {
        mpz_class r;
        mpz_mod_ui(r.get_mpz_t(), c.get_mpz_t(), p);
        f.push_back(r.get_si());
    }
    for (int k = 1; k <= degree_ / 2; ++k) {
        double count = 1;
        for (int i = 0; i < k; ++i) count *= static_cast<double>(p);
        if (count > 1e7) throw std::invalid_argument("irreducible_mod: prime too large");
        const long total = static_cast<long>(count);
        for (long idx = 0; idx < total; ++idx) {
            ModPoly d(static_cast<std::size_t>(k) + 1, 0);
            long t = idx;
            for (int i = 0; i < k; ++i) {
                d[static_cast<std::size_t>(i)] = t % lp;
                t /= lp;
            }
            d[static_cast<std::size_t>(k)] = 1;
            if (divides_mod(d, f, lp)) return false;
        }
    }
    return true;
}

NfElement::NfElement(const NumberField* field, std::vector<mpq_class> coords)
    : field_(field), coords_(std::move(coords)) {
    if (field_ == nullptr || static_cast<int>(coords_.size()) != field_->degree()) {
        throw std::invalid_argument("NfElement: coordinate count does not match field degree");
    }
    for (auto& c : coords_) c.canonicalize();
}

bool NfElement::is_zero() const {
    return std::all_of(coords_.begin(), coords_.end(), [](const mpq_class& c) { return c == 0; });
}

bool NfElement::is_rational() const {
    return std::all_of(coords_.begin() + 1, coords_.end(),
                       [](const mpq_class& c) { return c == 0; });
}

mpz_class NfElement::denominator() const {
    mpz_class d = 1;
    for (const auto& c : coords_) {
        mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), c.get_den_mpz_t());
    }
    return d;
}

NfElement NfElement::operator-() const {
    NfElement r = *this;
    for (auto& c : r.coords_) c = -c;
    return r;
}

NfElement& NfElement::operator+=(const NfElement& o) {
    for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += o.coords_[i];
    return *this;
}

NfElement& NfElement::operator-=(const NfElement& o) {
    for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] -= o.coords_[i];
    return *this;
}

NfElement& NfElement::operator*=(const mpq_class& c) {
    for (auto& x : coords_) x *= c;
    return *this;
}

NfElement& NfElement::operator*=(const NfElement& o) {
    const std::size_t d = coords_.size();
    const auto& f = field_->min_poly();
    std::vector<mpq_class> r(2 * d - 1);
    for (std::size_t i = 0; i < d; ++i) {
        if (coords_[i] == 0) continue;
        for (std::size_t j = 0; j < d; ++j) {
            if (o.coords_[j] == 0) continue;
            r[i + j] += coords_[i] * o.coords_[j];
        }
    }
    for (std::size_t k = 2 * d - 2; k >= d; --k) {
        if (r[k] == 0) continue;
        const mpq_class c = r[k];
        r[k] = 0;
        for (std::size_t i = 0; i < d; ++i) r[k - d + i] -= c * f[i];
    }
    r.resize(d);
    coords_ = std::move(r);
    return *this;
}

std::vector<std::vector<mpq_class>> NfElement::mult_matrix() const {
    const std::size_t d = coords_.size();
    QMatrix m(d, std::vector<mpq_class>(d));
    NfElement basis = field_->one();
    const NfElement alpha = field_->generator();
    for (std::size_t j = 0; j < d; ++j) {
        if (j > 0) basis *= alpha;
        const NfElement col = *this * basis;
        for (std::size_t i = 0; i < d; ++i) m[i][j] = col.coords_[i];
    }
    return m;
}

NfElement NfElement::inverse() const {
    if (is_zero()) throw std::domain_error("NfElement: inverse of zero");
    std::vector<mpq_class> rhs(coords_.size());
    rhs[0] = 1;
    return NfElement(field_, solve(mult_matrix(), std::move(rhs)));
}

NfElement operator/(const NfElement& a, const NfElement& b) {
    if (b.is_zero()) throw std::domain_error("NfElement: division by zero");
    return a * b.inverse();
}

NfElement NfElement::pow(unsigned long e) const {
    NfElement r = field_->one();
    NfElement b = *this;
    for (; e != 0; e >>= 1) {
        if (e & 1UL) r *= b;
        if (e > 1) b *= b;
    }
    return r;
}

std::string NfElement::str() const {
    std::string s = "[";
    for (std::size_t i = 0; i < coords_.size(); ++i) {
        if (i) s += ",";
        s += coords_[i].get_str();
    }
    return s + "]";
}

NfElement nf_arith(const NfElement& a, const NfElement& b, ArithOp op) {
    switch (op) {
        case ArithOp::add: return a + b;
        case ArithOp::sub: return a - b;
        case ArithOp::mul: return a * b;
        case ArithOp::div: return a / b;
    }
    throw std::invalid_argument("nf_arith: unknown op");
}

mpq_class nf_norm(const NfElement& a) { return determinant(a.mult_matrix()); }

mpq_class nf_trace(const NfElement& a) {
    const auto m = a.mult_matrix();
    mpq_class t = 0;
    for (std::size_t i = 0; i < m.size(); ++i) t += m[i][i];
    return t;
}

mpq_class nf_norm_resultant(const NfElement& a) {
    QPoly g(a.coords().begin(), a.coords().end());
    trim(g);
    if (g.empty()) return 0;
    QPoly f;
    for (const auto& c : a.field().min_poly()) f.emplace_back(c);
    const std::size_t m = f.size() - 1;  // deg f
    const std::size_t n = g.size() - 1;  // deg g
    if (n == 0) {
        mpq_class r = 1;
        for (std::size_t i = 0; i < m; ++i) r *= g[0];
        return r;
    }
    // Sylvester matrix rows: n shifted copies of f, m shifted copies of g (high to low).
    const std::size_t size = m + n;
    QMatrix s(size, std::vector<mpq_class>(size));
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t i = 0; i <= m; ++i) s[r][r + i] = f[m - i];
    }
    for (std::size_t r = 0; r < m; ++r) {
        for (std::size_t i = 0; i <= n; ++i) s[n + r][r + i] = g[n - i];
    }
    return determinant(std::move(s));
}

NfElement apply_sigma(const NfElement& a) {
    const NumberField& f = a.field();
    if (!f.has_sigma()) throw std::logic_error("apply_sigma: field " + f.name() + " has no sigma");
    NfElement r = f.zero();
    for (std::size_t i = 0; i < a.coords().size(); ++i) {
        if (a.coords()[i] != 0) r += f.element(f.sigma_images()[i]) * a.coords()[i];
    }
    return r;
}

std::vector<RealInterval> real_embedding_values(const NfElement& a, int bits) {
    std::vector<RealInterval> out;
    for (const auto& root : a.field().real_roots(bits)) out.push_back(evaluate_at(a, root));
    return out;
}

int embedding_sign(const NfElement& a, std::size_t root_index) {
    if (a.is_zero()) throw std::domain_error("embedding_sign: element is zero");
    for (int bits = 32; bits <= 8192; bits *= 2) {
        const auto roots = a.field().real_roots(bits);
        if (root_index >= roots.size()) throw std::out_of_range("embedding_sign: no such real root");
        const RealInterval v = evaluate_at(a, roots[root_index]);
        if (!v.contains_zero()) return sgn(v.lo);
    }
    throw std::domain_error("embedding_sign: sign undecided at maximum precision");
}

std::vector<NfElement> lambda_candidates(const NumberField& field) {
    const auto& units = field.units();
    const std::size_t r = units.size();
    std::vector<NfElement> out;
    for (std::size_t mask = 0; mask < (std::size_t{1} << r); ++mask) {
        NfElement prod = field.one();
        for (std::size_t i = 0; i < r; ++i) {
            if (mask & (std::size_t{1} << i)) prod *= field.element(units[i].coords);
        }
        for (int s : {1, -1}) {
            NfElement cand = prod * mpq_class(s);
            if (nf_norm(cand) == 1) out.push_back(std::move(cand));
        }
    }
    return out;
}

std::vector<int> required_lambda_signs(int p2_sign, const NfElement& r2_coeff) {
    const std::size_t n = r2_coeff.field().real_roots(16).size();
    std::vector<int> signs(n, 0);
    for (std::size_t j = 0; j < n; ++j) {
        const int c = r2_coeff.is_zero() ? 0 : embedding_sign(r2_coeff, j);
        if (c == 0 || c == p2_sign) signs[j] = p2_sign;
    }
    return signs;
}

std::vector<NfElement> positivity_filter(const std::vector<NfElement>& candidates,
                                         const std::vector<int>& required_signs) {
    std::vector<NfElement> out;
    for (const auto& c : candidates) {
        bool ok = true;
        for (std::size_t j = 0; j < required_signs.size() && ok; ++j) {
            if (required_signs[j] != 0 && embedding_sign(c, j) != required_signs[j]) ok = false;
        }
        if (ok) out.push_back(c);
    }
    return out;
}

}  // namespace lucasq
