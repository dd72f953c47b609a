#include "lse/models.hpp"

#include <algorithm>
#include <cmath>

namespace lse {

namespace {

bool in_01(double v) { return v >= 0.0 && v <= 1.0; }
bool is_open01(double v) { return v > 0.0 && v < 1.0; }

}  // namespace

std::string to_string(ModelKind k) {
    switch (k) {
        case ModelKind::gosp: return "gosp";
        case ModelKind::gobp: return "gobp";
        case ModelKind::dpre: return "dpre";
        case ModelKind::bcpp: return "bcpp";
        case ModelKind::vm: return "vm";
    }
    return "?";
}

std::string to_string(EnvLaw e) { return e == EnvLaw::bernoulli ? "bernoulli" : "gaussian"; }

std::optional<ModelKind> parse_model_kind(const std::string& s) {
    if (s == "gosp") return ModelKind::gosp;
    if (s == "gobp") return ModelKind::gobp;
    if (s == "dpre") return ModelKind::dpre;
    if (s == "bcpp") return ModelKind::bcpp;
    if (s == "vm") return ModelKind::vm;
    return std::nullopt;
}

std::optional<EnvLaw> parse_env_law(const std::string& s) {
    if (s == "bernoulli") return EnvLaw::bernoulli;
    if (s == "gaussian") return EnvLaw::gaussian;
    return std::nullopt;
}

ModelSpec ModelSpec::gosp(int d, double p, double q) {
    ModelSpec m;
    m.kind = ModelKind::gosp;
    m.dim = d;
    m.p = p;
    m.q = q;
    m.validate();
    return m;
}

ModelSpec ModelSpec::gobp(int d, double p, double q) {
    ModelSpec m = gosp(d, p, q);
    m.kind = ModelKind::gobp;
    return m;
}

ModelSpec ModelSpec::dpre_bernoulli(int d, double beta, double rho) {
    ModelSpec m;
    m.kind = ModelKind::dpre;
    m.dim = d;
    m.beta = beta;
    m.env = EnvLaw::bernoulli;
    m.rho = rho;
    m.validate();
    return m;
}

ModelSpec ModelSpec::dpre_gaussian(int d, double beta) {
    ModelSpec m;
    m.kind = ModelKind::dpre;
    m.dim = d;
    m.beta = beta;
    m.env = EnvLaw::gaussian;
    m.validate();
    return m;
}

ModelSpec ModelSpec::bcpp(int d, double p, double q) {
    ModelSpec m;
    m.kind = ModelKind::bcpp;
    m.dim = d;
    m.p = p;
    m.q = q;
    m.validate();
    return m;
}

ModelSpec ModelSpec::vm(int d, double p) {
    ModelSpec m;
    m.kind = ModelKind::vm;
    m.dim = d;
    m.p = p;
    m.validate();
    return m;
}

void ModelSpec::validate() const {
    if (dim < 1 || dim > kMaxDim)
        throw ModelError("d must be in [1, " + std::to_string(kMaxDim) + "]");
    switch (kind) {
        case ModelKind::gosp:
        case ModelKind::gobp:
        case ModelKind::bcpp:
            if (!in_01(p)) throw ModelError("p must lie in [0,1]");
            if (!in_01(q)) throw ModelError("q must lie in [0,1]");
            if (p == 0.0 && q == 0.0) throw ModelError("(p,q) = (0,0) gives the zero kernel");
            if (p == 1.0 && q == 1.0) throw ModelError("(p,q) = (1,1) gives a constant kernel");
            break;
        case ModelKind::vm:
            if (!(p > 0.0 && p <= 1.0)) throw ModelError("p must lie in (0,1] for vm");
            break;
        case ModelKind::dpre:
            if (!(beta > 0.0)) throw ModelError("beta must be positive for dpre");
            if (env == EnvLaw::bernoulli && !is_open01(rho))
                throw ModelError("rho must lie in (0,1) for the Bernoulli environment");
            break;
    }
}

std::string ModelSpec::label() const {
    std::string s = to_string(kind) + " d=" + std::to_string(dim);
    char buf[96];
    switch (kind) {
        case ModelKind::gosp:
        case ModelKind::gobp:
        case ModelKind::bcpp:
            std::snprintf(buf, sizeof(buf), " p=%g q=%g", p, q);
            break;
        case ModelKind::vm:
            std::snprintf(buf, sizeof(buf), " p=%g", p);
            break;
        case ModelKind::dpre:
            if (env == EnvLaw::bernoulli)
                std::snprintf(buf, sizeof(buf), " beta=%g env=bernoulli rho=%g", beta, rho);
            else
                std::snprintf(buf, sizeof(buf), " beta=%g env=gaussian", beta);
            break;
    }
    return s + buf;
}

double dpre_lambda(const ModelSpec& m, double beta) {
    if (m.env == EnvLaw::bernoulli) return std::log1p(m.rho * std::expm1(beta));
    return 0.5 * beta * beta;
}

double dpre_lambda_prime(const ModelSpec& m, double beta) {
    if (m.env == EnvLaw::bernoulli) {
        const double e = std::exp(beta);
        return m.rho * e / (1.0 - m.rho + m.rho * e);
    }
    return beta;
}

std::pair<SiteField, double> mean_kernel(const ModelSpec& m) {
    m.validate();
    const int d = m.dim;
    double nbr = 0.0, diag = 0.0, total = 0.0;
    switch (m.kind) {
        case ModelKind::gosp:
        case ModelKind::gobp:
            nbr = m.p;
            diag = m.q;
            total = 2.0 * d * m.p + m.q;
            break;
        case ModelKind::dpre: {
            const double el = std::exp(dpre_lambda(m, m.beta));
            nbr = el / (2.0 * d);
            diag = 0.0;
            total = el;
            break;
        }
        case ModelKind::bcpp:
            nbr = m.p / (2.0 * d);
            diag = m.q;
            total = m.p + m.q;
            break;
        case ModelKind::vm:
            nbr = m.p / (2.0 * d);
            diag = 1.0 - m.p;
            total = 1.0;
            break;
    }
    SiteField::Builder b(d);
    if (diag != 0.0) b.add(Site::zero(d), diag);
    if (nbr != 0.0) {
        for (int j = 0; j < d; ++j) {
            b.add(Site::unit(d, j, -1), nbr);
            b.add(Site::unit(d, j, +1), nbr);
        }
    }
    return {b.build(), total};
}

namespace {

double mean_entry(const ModelSpec& m, const Site& diff) {
    // a_{diff} without building the field.
    const std::int64_t n = diff.l1();
    switch (m.kind) {
        case ModelKind::gosp:
        case ModelKind::gobp:
            if (n == 1) return m.p;
            if (n == 0) return m.q;
            return 0.0;
        case ModelKind::dpre:
            if (n == 1) return std::exp(dpre_lambda(m, m.beta)) / (2.0 * m.dim);
            return 0.0;
        case ModelKind::bcpp:
            if (n == 1) return m.p / (2.0 * m.dim);
            if (n == 0) return m.q;
            return 0.0;
        case ModelKind::vm:
            if (n == 1) return m.p / (2.0 * m.dim);
            if (n == 0) return 1.0 - m.p;
            return 0.0;
    }
    return 0.0;
}

}  // namespace

double pair_moment(const ModelSpec& m, const Site& x, const Site& xt, const Site& y,
                   const Site& yt) {
    if (!(y == yt)) return mean_entry(m, y - x) * mean_entry(m, yt - xt);
    const Site u = y - x;
    const Site ut = y - xt;
    const std::int64_t nu = u.l1(), nut = ut.l1();
    if (nu > 1 || nut > 1) return 0.0;
    switch (m.kind) {
        case ModelKind::gosp:
            if (nu == 0 && nut == 0) return m.q;
            if (nu == 1 && nut == 1) return m.p;  // shared eta, any pair of rows
            return m.p * m.q;
        case ModelKind::gobp:
            if (x == xt) return mean_entry(m, u);  // same 0/1 entry squared
            return mean_entry(m, u) * mean_entry(m, ut);  // independent bonds
        case ModelKind::dpre:
            return std::exp(dpre_lambda(m, 2.0 * m.beta) - 2.0 * dpre_lambda(m, m.beta)) *
                   mean_entry(m, u) * mean_entry(m, ut);
        case ModelKind::bcpp:
            if (x == xt) return mean_entry(m, u);
            if (nu == 0) return m.q * mean_entry(m, ut);  // x = y: zeta times the eta term
            if (nut == 0) return m.q * mean_entry(m, u);
            return 0.0;  // two distinct wind directions cannot both fire
        case ModelKind::vm:
            return x == xt ? mean_entry(m, u) : 0.0;
    }
    return 0.0;
}

double pair_weight(const ModelSpec& m, const Site& x, const Site& xt, const Site& y,
                   const Site& yt) {
    const double denom = mean_entry(m, y - x) * mean_entry(m, yt - xt);
    if (denom <= 0.0) return 0.0;
    return pair_moment(m, x, xt, y, yt) / denom;
}

double phi_fractional(const ModelSpec& m, double h) {
    const int d = m.dim;
    switch (m.kind) {
        case ModelKind::gosp:
        case ModelKind::gobp:
            return std::pow(2.0 * d * m.p + m.q, 1.0 - h);
        case ModelKind::bcpp:
            return std::pow(m.p + m.q, 1.0 - h);
        case ModelKind::vm:
            return 1.0;
        case ModelKind::dpre:
            return std::pow(2.0 * d, 1.0 - h) *
                   std::exp(dpre_lambda(m, h * m.beta) - h * dpre_lambda(m, m.beta));
    }
    return 1.0;
}

void sample_column_flat(const ModelSpec& m, std::uint64_t seed, std::int64_t t,
                        const Site& column, const std::vector<Site>& offsets, double* out) {
    const int d = m.dim;
    const int n = static_cast<int>(offsets.size());
    SiteRandom rng(seed, t, column);
    switch (m.kind) {
        case ModelKind::gosp: {
            const double eta = rng.next_bernoulli(m.p) ? 1.0 : 0.0;
            const double zeta = rng.next_bernoulli(m.q) ? 1.0 : 0.0;
            for (int k = 0; k < n; ++k) out[k] = (k == d) ? zeta : eta;
            break;
        }
        case ModelKind::gobp: {
            for (int k = 0; k < n; ++k)
                if (k != d) out[k] = rng.next_bernoulli(m.p) ? 1.0 : 0.0;
            out[d] = rng.next_bernoulli(m.q) ? 1.0 : 0.0;
            break;
        }
        case ModelKind::dpre: {
            double eta;
            if (m.env == EnvLaw::bernoulli)
                eta = rng.next_bernoulli(m.rho) ? 1.0 : 0.0;
            else
                eta = rng.next_normal();
            const double v = std::exp(m.beta * eta) / (2.0 * d);
            for (int k = 0; k < n; ++k) out[k] = (k == d) ? 0.0 : v;
            break;
        }
        case ModelKind::bcpp: {
            const double eta = rng.next_bernoulli(m.p) ? 1.0 : 0.0;
            const double zeta = rng.next_bernoulli(m.q) ? 1.0 : 0.0;
            const int dir = rng.next_index(2 * d);
            // A_{x,y} = eta on the row x = y - e, i.e. row offset -e.
            const int k_eta = dir < d ? dir : dir + 1;  // skip the zero offset slot
            const int k_neg = n - 1 - k_eta;            // offsets list is symmetric
            for (int k = 0; k < n; ++k) out[k] = 0.0;
            out[k_neg] = eta;
            out[d] += zeta;
            break;
        }
        case ModelKind::vm: {
            const double u = rng.next_uniform();
            int k_one = d;  // stay: row offset 0
            if (u >= 1.0 - m.p) {
                int dir = static_cast<int>((u - (1.0 - m.p)) / m.p * (2 * d));
                if (dir >= 2 * d) dir = 2 * d - 1;
                k_one = dir < d ? dir : dir + 1;
            }
            for (int k = 0; k < n; ++k) out[k] = (k == k_one) ? 1.0 : 0.0;
            break;
        }
    }
}

std::vector<std::pair<Site, double>> sample_column(const ModelSpec& m, const Site& column,
                                                   std::uint64_t seed, std::int64_t t) {
    const auto offsets = unit_ball_offsets(m.dim);
    std::vector<double> flat(offsets.size());
    sample_column_flat(m, seed, t, column, offsets, flat.data());
    std::vector<std::pair<Site, double>> out;
    for (std::size_t k = 0; k < offsets.size(); ++k)
        if (flat[k] != 0.0) out.push_back({column + offsets[k], flat[k]});
    return out;
}

MomentTable moment_tables(const ModelSpec& m) {
    m.validate();
    MomentTable tab;
    auto [a, total] = mean_kernel(m);
    tab.a = a;
    tab.a_total = total;
    tab.a_bar = a.scaled(1.0 / total);

    tab.b = convolve(a, a.reflected());

    // b^A_x = sum_y E[A_{1,0,y} A_{1,x,y}] over |x| <= 2.
    const int d = m.dim;
    SiteField::Builder bA(d);
    const Box ball2 = Box::cube(d, -2, 2);
    const Site origin = Site::zero(d);
    for (const Site& x : ball2.sites()) {
        if (x.l1() > 2) continue;
        double s = 0.0;
        for (const Site& off : unit_ball_offsets(d)) {
            // only columns y within range 1 of both rows contribute
            const Site y = x + off;
            if ((y - origin).l1() > 1) continue;
            s += pair_moment(m, origin, x, y, y);
        }
        if (s != 0.0) bA.add(x, s);
    }
    tab.bA = bA.build();

    switch (m.kind) {
        case ModelKind::gosp:
            tab.delta = (1.0 - m.p) * (1.0 - m.q);
            break;
        case ModelKind::gobp:
            tab.delta = std::pow(1.0 - m.p, 2.0 * d) * (1.0 - m.q);
            break;
        case ModelKind::bcpp:
            tab.delta = (1.0 - m.p) * (1.0 - m.q);
            break;
        case ModelKind::vm:
        case ModelKind::dpre:
            tab.delta = 0.0;
            break;
    }

    if (m.kind == ModelKind::dpre) {
        const double el = std::exp(dpre_lambda(m, m.beta));
        tab.entropy_lhs =
            el * (m.beta * dpre_lambda_prime(m, m.beta) - std::log(2.0 * d));
    } else {
        tab.entropy_lhs = 0.0;  // all entries are indicators, A ln A = 0
    }
    tab.entropy_rhs = total * std::log(total);
    return tab;
}

bool column_sum_is_constant(const ModelSpec& m) {
    switch (m.kind) {
        case ModelKind::gosp:
        case ModelKind::gobp:
        case ModelKind::bcpp:
            // sum is 2d*eta + zeta (gosp), sum of independent indicators (gobp),
            // eta + zeta (bcpp); validation guarantees some parameter in (0,1)
            // except at the deterministic corners.
            return (m.p == 0.0 || m.p == 1.0) && (m.q == 0.0 || m.q == 1.0);
        case ModelKind::dpre:
            return false;  // environment laws are non-degenerate by validation
        case ModelKind::vm:
            return true;  // the column is one-hot, its sum is identically 1
    }
    return false;
}

}  // namespace lse
