#pragma once

#include <Eigen/Dense>
#include <functional>
#include <utility>
#include <vector>

#include "pairgf/common.hpp"
#include "pairgf/pair_gf.hpp"

namespace pairgf::dyson {

using Matrix = Eigen::MatrixXcd;

// Electron positions (a, b) with a Nystrom weight each. Always closed under a <-> b.
struct GridSpec {
    std::vector<std::pair<Vec3, Vec3>> points;
    std::vector<double> weights;

    std::size_t size() const { return points.size(); }
};

// Adds the exchanged partner (b, a) of every point that lacks one, with the same weight.
// Points with a = b are rejected: the bare GF diverges there in both channels.
GridSpec make_grid(const std::vector<std::pair<Vec3, Vec3>>& points, const std::vector<double>& weights,
                   std::size_t max_points = 512);

// U(a, b) = V(a) + V(b) + u(a, b), spin independent.
struct PotentialSpec {
    std::function<double(const Vec3&)> v_ext;
    std::function<double(const Vec3&, const Vec3&)> u_pair;

    double operator()(const Vec3& a, const Vec3& b) const;
};

struct SpinProjectors {
    Eigen::Matrix4d lambda_s;
    Eigen::Matrix4d lambda_t;
};

// Basis |uu>, |ud>, |du>, |dd>.
SpinProjectors spin_projectors();

struct DysonOptions {
    pair::PairOptions pair{};
    double cK = 0.25;
    // Point splitting for tuples the bare GF cannot take: the second argument's
    // centre moves by split_shift and its relative vector is scaled by 1 + split_scale.
    double split_shift = 0.1;
    double split_scale = 0.1;
    double min_rcond = 1e-12;
    int threads = 1;
};

// g_ch(x_i, x_j) on the grid.
Matrix bare_kernel(const GridSpec& grid, double E, pair::SpinChannel ch, const DysonOptions& opt = {});

// Solves G = g + g U W G for one channel.
Matrix dyson_solve(const GridSpec& grid, const PotentialSpec& pot, double E, pair::SpinChannel ch,
                   const DysonOptions& opt = {});
Matrix dyson_solve_kernel(const Matrix& g, const GridSpec& grid, const PotentialSpec& pot, double min_rcond = 1e-12);

// Lambda_s (x) G_e + Lambda_t (x) G_o, grid index major, spin index minor.
Matrix assemble_spin(const Matrix& g_even, const Matrix& g_odd);

// The same equation in the 4N-dimensional spin product space.
Matrix dyson_solve_spin(const Matrix& g_spin, const GridSpec& grid, const PotentialSpec& pot,
                        double min_rcond = 1e-12);

// Frobenius norm of (1 (x) Lambda_s) (U (x) 1) (1 (x) Lambda_t).
double cross_channel_norm(const GridSpec& grid, const PotentialSpec& pot);

}  // namespace pairgf::dyson
