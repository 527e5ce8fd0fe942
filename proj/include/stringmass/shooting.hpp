#pragma once

#include <vector>

#include "stringmass/coefficients.hpp"

namespace stringmass {

inline constexpr int kDefaultShootingSteps = 4096;
inline constexpr int kMinShootingSteps = 64;

/// Sampled solution of one side initial-value problem at fixed lambda.
///
/// Left side: y(-1) = 0, y'(-1) = 1, integrated towards 0.
/// Right side: y(1) = 0, y'(1) = -1, integrated towards 0.
/// `x` is always stored in increasing order.
struct SideSolution {
    double lambda = 0.0;
    Side side = Side::Left;
    std::vector<double> x;
    std::vector<double> y;
    std::vector<double> yx;   // plain derivative y'
    double y0 = 0.0;          // y at the junction
    double yx0 = 0.0;         // one-sided y' at the junction
};

/// Solution together with its lambda-derivative, obtained from the
/// variational system y_l' = w_l / sigma, w_l' = (q - lambda rho) y_l - rho y.
struct LambdaDerivative {
    double lambda = 0.0;
    Side side = Side::Left;
    std::vector<double> x;
    std::vector<double> y_lambda;
    std::vector<double> y_lambda_x;
    double y0 = 0.0;
    double yx0 = 0.0;
    double y_lambda0 = 0.0;
    double y_lambda_x0 = 0.0;
};

/// Junction data only, no sample storage.
struct JunctionState {
    double y = 0.0;
    double yx = 0.0;
};

struct JunctionSensitivity {
    double y = 0.0;
    double yx = 0.0;
    double y_lambda = 0.0;
    double y_lambda_x = 0.0;
};

/// Values at the seeded end (x = -1 on the left, x = 1 on the right).
struct Seed {
    double y = 0.0;
    double slope = 1.0;
};

inline Seed standard_seed(Side side) { return {0.0, side == Side::Left ? 1.0 : -1.0}; }

/// Fixed-step classical RK4 integrator for the first-order form
/// (y, w = sigma y') with coefficients cached at nodes and midpoints.
///
/// Immutable after construction; concurrent calls are safe.
class Shooter {
public:
    explicit Shooter(const SystemConfig& config, int n_steps = kDefaultShootingSteps);

    const SystemConfig& config() const { return config_; }
    int n_steps() const { return n_; }

    JunctionState junction(Side side, double lambda) const;
    JunctionSensitivity junction_sensitivity(Side side, double lambda) const;
    SideSolution solve(Side side, double lambda) const;
    SideSolution solve(Side side, double lambda, Seed seed) const;
    LambdaDerivative solve_derivative(Side side, double lambda) const;

    /// Sign changes of y along the integration nodes, seeded end excluded.
    /// For lambda not a Dirichlet eigenvalue this equals the number of
    /// Dirichlet eigenvalues below lambda.
    int interior_zeros(Side side, double lambda) const;

    /// Abscissa of integration node i (0 = seeded end, n_steps = junction).
    double node(Side side, int i) const;

private:
    struct Cache {
        std::vector<double> inv_sigma;  // 2n+1 entries; even = node, odd = midpoint
        std::vector<double> rho;
        std::vector<double> q;
        double sigma_start = 1.0;
        double sigma_junction = 1.0;
    };

    const Cache& cache(Side side) const { return side == Side::Left ? left_ : right_; }

    template <class Visitor>
    void integrate(Side side, double lambda, bool with_derivative, Seed seed, Visitor&& visit) const;

    SystemConfig config_;
    int n_;
    Cache left_;
    Cache right_;
};

SideSolution shoot_left(double lambda, const SystemConfig& config, int n_steps = kDefaultShootingSteps);
SideSolution shoot_right(double lambda, const SystemConfig& config, int n_steps = kDefaultShootingSteps);
LambdaDerivative shoot_lambda_derivative(double lambda, Side side, const SystemConfig& config,
                                         int n_steps = kDefaultShootingSteps);

/// Writes x, y, y_prime columns.
void write_side_solution_csv(const SideSolution& sol, const std::string& path);

} // namespace stringmass
