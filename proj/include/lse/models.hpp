#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lse/lattice.hpp"
#include "lse/rng.hpp"

namespace lse {

enum class ModelKind { gosp, gobp, dpre, bcpp, vm };
enum class EnvLaw { bernoulli, gaussian };

std::string to_string(ModelKind k);
std::string to_string(EnvLaw e);
std::optional<ModelKind> parse_model_kind(const std::string& s);
std::optional<EnvLaw> parse_env_law(const std::string& s);

struct ModelError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// One catalogue entry: kind plus its parameters. All catalogued kernels have
// range r_A = 1 and independent columns.
struct ModelSpec {
    ModelKind kind = ModelKind::gosp;
    int dim = 1;
    double p = 0.0;    // site/bond/infection probability (gosp, gobp, bcpp), jump rate (vm)
    double q = 0.0;    // lazy/recovery probability (gosp, gobp, bcpp)
    double beta = 0.0; // inverse temperature (dpre)
    EnvLaw env = EnvLaw::bernoulli;
    double rho = 0.5;  // Bernoulli environment parameter (dpre)

    static ModelSpec gosp(int d, double p, double q);
    static ModelSpec gobp(int d, double p, double q);
    static ModelSpec osp(int d, double p) { return gosp(d, p, 0.0); }
    static ModelSpec obp(int d, double p) { return gobp(d, p, 0.0); }
    static ModelSpec dpre_bernoulli(int d, double beta, double rho);
    static ModelSpec dpre_gaussian(int d, double beta);
    static ModelSpec bcpp(int d, double p, double q);
    static ModelSpec vm(int d, double p);

    // Throws ModelError naming the offending parameter.
    void validate() const;

    std::string label() const;
};

// Log moment generating function of the DPRE environment and its derivative.
double dpre_lambda(const ModelSpec& m, double beta);
double dpre_lambda_prime(const ModelSpec& m, double beta);

// Closed-form kernel moments.
struct MomentTable {
    SiteField a;        // mean kernel a_y = E[A_{1,0,y}]
    double a_total;     // |a|
    SiteField a_bar;    // a / |a|
    SiteField b;        // b_x = sum_y a_y a_{y-x}
    SiteField bA;       // b^A_x = sum_y E[A_{1,0,y} A_{1,x,y}]
    double delta;       // P(column at 0 is identically zero)
    double entropy_lhs; // sum_y E[A_{1,0,y} ln A_{1,0,y}], 0 ln 0 = 0
    double entropy_rhs; // |a| ln |a|
};

// (a, |a|). |a| from the closed form, not the stored sum.
std::pair<SiteField, double> mean_kernel(const ModelSpec& m);

// E[A_{1,x,y} A_{1,xt,yt}]; factorizes over distinct columns y != yt.
double pair_moment(const ModelSpec& m, const Site& x, const Site& xt, const Site& y, const Site& yt);

// w of the Feynman-Kac pair weight: pair_moment / (a_{y-x} a_{yt-xt}), 0 when
// the denominator vanishes.
double pair_weight(const ModelSpec& m, const Site& x, const Site& xt, const Site& y, const Site& yt);

// phi(h) = sum_y E[(A_{1,0,y}/|a|)^h]; phi(1) = 1.
double phi_fractional(const ModelSpec& m, double h);

// One sample of the column at `column`: out[k] = A_{column + off_k, column}
// where off_k runs over unit_ball_offsets(dim). Draw order is fixed per model.
void sample_column_flat(const ModelSpec& m, std::uint64_t seed, std::int64_t t,
                        const Site& column, const std::vector<Site>& offsets, double* out);

// Sparse wrapper: map from row site to entry value, zeros omitted.
std::vector<std::pair<Site, double>> sample_column(const ModelSpec& m, const Site& column,
                                                   std::uint64_t seed, std::int64_t t);

MomentTable moment_tables(const ModelSpec& m);

// Whether sum_x A_{1,x,0} (the column sum at the origin) is a.s. constant.
// Hypothesis (non-constancy) is what the dual slow-growth theorem needs.
bool column_sum_is_constant(const ModelSpec& m);

}  // namespace lse
