#include "pairgf/dyson.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

namespace pairgf::dyson {

namespace {

const Vec3 split_direction = (1.0 / std::sqrt(0.98)) * Vec3{0.3, 0.5, 0.8};

pair::PairArgs make_args(const std::pair<Vec3, Vec3>& x, const std::pair<Vec3, Vec3>& y, double cK) {
    return {x.first, x.second, y.first, y.second, cK};
}

bool needs_split(const pair::PairArgs& p) {
    pair::PairArgs ex = p;
    std::swap(ex.a2, ex.b2);
    return !pair::classify_args(p).regular() || !pair::classify_args(ex).regular();
}

// Shifts the centre and scales the relative vector; swapping a and b before or after gives the same result.
std::pair<Vec3, Vec3> split(const std::pair<Vec3, Vec3>& y, const DysonOptions& opt) {
    const Vec3 R = 0.5 * (y.first + y.second) + opt.split_shift * split_direction;
    const Vec3 r = (1.0 + opt.split_scale) * (y.first - y.second);
    return {R + 0.5 * r, R - 0.5 * r};
}

Matrix solve(const Matrix& g, const Eigen::VectorXd& uw, double min_rcond) {
    const Eigen::Index n = g.rows();
    Matrix A = Matrix::Identity(n, n) - g * uw.asDiagonal();
    Eigen::PartialPivLU<Matrix> lu(A);
    const double rc = lu.rcond();
    if (!(rc >= min_rcond)) throw SingularSystem("dyson: system is singular or ill-conditioned");
    return lu.solve(g);
}

Eigen::VectorXd potential_weights(const GridSpec& grid, const PotentialSpec& pot) {
    Eigen::VectorXd uw(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i)
        uw[Eigen::Index(i)] = pot(grid.points[i].first, grid.points[i].second) * grid.weights[i];
    return uw;
}

}  // namespace

GridSpec make_grid(const std::vector<std::pair<Vec3, Vec3>>& points, const std::vector<double>& weights,
                   std::size_t max_points) {
    if (points.size() != weights.size()) throw DomainError("make_grid: points and weights differ in length");
    GridSpec g;
    auto has = [&](const std::pair<Vec3, Vec3>& p) {
        return std::find(g.points.begin(), g.points.end(), p) != g.points.end();
    };
    for (std::size_t i = 0; i < points.size(); ++i) {
        const auto& p = points[i];
        if (!(weights[i] > 0.0) || !std::isfinite(weights[i])) throw DomainError("make_grid: weights must be positive");
        if (p.first == p.second) throw DomainError("make_grid: a = b is a divergent point");
        if (has(p)) continue;
        g.points.push_back(p);
        g.weights.push_back(weights[i]);
        const std::pair<Vec3, Vec3> q{p.second, p.first};
        if (!has(q)) {
            g.points.push_back(q);
            g.weights.push_back(weights[i]);
        }
    }
    if (g.size() > max_points) throw DomainError("make_grid: too many points after symmetrization");
    return g;
}

double PotentialSpec::operator()(const Vec3& a, const Vec3& b) const {
    double u = 0.0;
    if (v_ext) u += v_ext(a) + v_ext(b);
    if (u_pair) u += u_pair(a, b);
    return u;
}

SpinProjectors spin_projectors() {
    Eigen::Vector4d chi(0.0, 1.0, -1.0, 0.0);
    chi /= std::sqrt(2.0);
    SpinProjectors p;
    p.lambda_s = chi * chi.transpose();
    p.lambda_t = Eigen::Matrix4d::Identity() - p.lambda_s;
    return p;
}

Matrix bare_kernel(const GridSpec& grid, double E, pair::SpinChannel ch, const DysonOptions& opt) {
    const std::size_t n = grid.size();
    Matrix g(n, n);
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_lock;
    auto work = [&] {
        for (std::size_t k = next++; k < n * n; k = next++) {
            const std::size_t i = k / n, j = k % n;
            try {
                auto y = grid.points[j];
                if (needs_split(make_args(grid.points[i], y, opt.cK))) y = split(y, opt);
                g(Eigen::Index(i), Eigen::Index(j)) =
                    pair::pair_gf_channel(make_args(grid.points[i], y, opt.cK), E, ch, opt.pair);
            } catch (...) {
                std::lock_guard<std::mutex> l(failure_lock);
                if (!failure) failure = std::current_exception();
            }
        }
    };
    const int nt = std::clamp(opt.threads, 1, int(std::max<std::size_t>(n * n, 1)));
    std::vector<std::thread> pool;
    for (int t = 1; t < nt; ++t) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
    return g;
}

Matrix dyson_solve_kernel(const Matrix& g, const GridSpec& grid, const PotentialSpec& pot, double min_rcond) {
    if (g.rows() != Eigen::Index(grid.size()) || g.cols() != g.rows())
        throw DomainError("dyson: kernel does not match the grid");
    return solve(g, potential_weights(grid, pot), min_rcond);
}

Matrix dyson_solve(const GridSpec& grid, const PotentialSpec& pot, double E, pair::SpinChannel ch,
                   const DysonOptions& opt) {
    return dyson_solve_kernel(bare_kernel(grid, E, ch, opt), grid, pot, opt.min_rcond);
}

Matrix assemble_spin(const Matrix& g_even, const Matrix& g_odd) {
    if (g_even.rows() != g_odd.rows() || g_even.cols() != g_odd.cols())
        throw DomainError("assemble_spin: channel matrices differ in shape");
    const SpinProjectors p = spin_projectors();
    const Eigen::Matrix4cd ls = p.lambda_s.cast<Complex>(), lt = p.lambda_t.cast<Complex>();
    Matrix out(4 * g_even.rows(), 4 * g_even.cols());
    for (Eigen::Index i = 0; i < g_even.rows(); ++i)
        for (Eigen::Index j = 0; j < g_even.cols(); ++j)
            out.block<4, 4>(4 * i, 4 * j) = g_even(i, j) * ls + g_odd(i, j) * lt;
    return out;
}

Matrix dyson_solve_spin(const Matrix& g_spin, const GridSpec& grid, const PotentialSpec& pot, double min_rcond) {
    const Eigen::Index n = Eigen::Index(grid.size());
    if (g_spin.rows() != 4 * n || g_spin.cols() != 4 * n) throw DomainError("dyson: spin kernel does not match the grid");
    const Eigen::VectorXd uw = potential_weights(grid, pot);
    Eigen::VectorXd uw4(4 * n);
    for (Eigen::Index i = 0; i < n; ++i) uw4.segment<4>(4 * i).setConstant(uw[i]);
    return solve(g_spin, uw4, min_rcond);
}

double cross_channel_norm(const GridSpec& grid, const PotentialSpec& pot) {
    const SpinProjectors p = spin_projectors();
    double sum = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double u = pot(grid.points[i].first, grid.points[i].second);
        const Eigen::Matrix4d block = p.lambda_s * (u * Eigen::Matrix4d::Identity()) * p.lambda_t;
        sum += block.squaredNorm();
    }
    return std::sqrt(sum);
}

}  // namespace pairgf::dyson
