#include "sbridge/datasets.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <string>

namespace sbridge {
namespace {

constexpr double kPi = std::numbers::pi;

void require_size(int n, int min_n, const char* what) {
    if (n < min_n)
        throw EmptyInput(std::string(what) + ": n must be at least " +
                         std::to_string(min_n));
}

void require_sigma(double sigma, const char* what) {
    if (!(sigma >= 0.0))
        throw Error(ErrorKind::config,
                    std::string(what) + ": noise sigma must be >= 0");
}

// count angles evenly spaced over [a, b]; includes b when inclusive.
std::vector<double> even_angles(int count, double a, double b, bool inclusive) {
    std::vector<double> out(static_cast<std::size_t>(count));
    if (count == 1) {
        out[0] = a;
        return out;
    }
    const double step = (b - a) / (inclusive ? count - 1 : count);
    for (int i = 0; i < count; ++i) out[static_cast<std::size_t>(i)] = a + step * i;
    return out;
}

// Parameters u_i of the Archimedean spiral r = r0 + b*u over [a, c] chosen so
// consecutive points are evenly spaced in arc length, keeping the sampled
// density constant along the whole arm.
std::vector<double> spiral_params(int count, double r0, double b, double a,
                                  double c) {
    constexpr int kGrid = 2048;
    std::array<double, kGrid + 1> s{};
    const double du = (c - a) / kGrid;
    for (int i = 1; i <= kGrid; ++i) {
        const double u0 = a + du * (i - 1);
        const double u1 = a + du * i;
        const double f0 = std::hypot(r0 + b * u0, b);
        const double f1 = std::hypot(r0 + b * u1, b);
        s[static_cast<std::size_t>(i)] =
            s[static_cast<std::size_t>(i - 1)] + 0.5 * (f0 + f1) * du;
    }
    std::vector<double> out(static_cast<std::size_t>(count));
    if (count == 1) {
        out[0] = a;
        return out;
    }
    int cursor = 0;
    for (int i = 0; i < count; ++i) {
        const double target = s[kGrid] * i / (count - 1);
        while (cursor < kGrid && s[static_cast<std::size_t>(cursor) + 1] < target)
            ++cursor;
        const double seg_lo = s[static_cast<std::size_t>(cursor)];
        const double seg_hi = s[static_cast<std::size_t>(cursor) + 1];
        const double frac = (seg_hi > seg_lo) ? (target - seg_lo) / (seg_hi - seg_lo) : 0.0;
        out[static_cast<std::size_t>(i)] = a + du * (cursor + frac);
    }
    return out;
}

void jitter(Matrix& x, Eigen::Index begin, Eigen::Index end, double sigma,
            Rng& rng) {
    if (sigma == 0.0) return;
    for (Eigen::Index i = begin; i < end; ++i)
        for (Eigen::Index j = 0; j < x.cols(); ++j)
            x(i, j) += rng.next_normal(0.0, sigma);
}

}  // namespace

int LabeledDataset::classes() const {
    int highest = -1;
    for (int v : y) highest = std::max(highest, v);
    return highest + 1;
}

LabeledDataset gen_moons(int n, double noise_sigma, Rng rng) {
    require_size(n, 2, "gen_moons");
    require_sigma(noise_sigma, "gen_moons");
    const int n0 = (n + 1) / 2;
    const int n1 = n - n0;

    LabeledDataset ds;
    ds.name = "moons";
    ds.x.resize(n, 2);
    ds.y.resize(static_cast<std::size_t>(n));
    const auto upper = even_angles(n0, 0.0, kPi, true);
    for (int i = 0; i < n0; ++i) {
        ds.x(i, 0) = std::cos(upper[static_cast<std::size_t>(i)]);
        ds.x(i, 1) = std::sin(upper[static_cast<std::size_t>(i)]);
        ds.y[static_cast<std::size_t>(i)] = 0;
    }
    const auto lower = even_angles(n1, 0.0, kPi, true);
    for (int i = 0; i < n1; ++i) {
        ds.x(n0 + i, 0) = 1.0 - std::cos(lower[static_cast<std::size_t>(i)]);
        ds.x(n0 + i, 1) = 0.5 - std::sin(lower[static_cast<std::size_t>(i)]);
        ds.y[static_cast<std::size_t>(n0 + i)] = 1;
    }
    jitter(ds.x, 0, n, noise_sigma, rng);
    return ds;
}

LabeledDataset gen_circles(int n, double radius_ratio, double noise_sigma,
                           Rng rng) {
    require_size(n, 2, "gen_circles");
    require_sigma(noise_sigma, "gen_circles");
    if (!(radius_ratio > 0.0 && radius_ratio < 1.0))
        throw InvalidRatio("gen_circles: radius ratio must be in (0, 1)");
    const int n0 = (n + 1) / 2;
    const int n1 = n - n0;

    LabeledDataset ds;
    ds.name = "circles";
    ds.x.resize(n, 2);
    ds.y.resize(static_cast<std::size_t>(n));
    const auto outer = even_angles(n0, 0.0, 2.0 * kPi, false);
    for (int i = 0; i < n0; ++i) {
        ds.x(i, 0) = std::cos(outer[static_cast<std::size_t>(i)]);
        ds.x(i, 1) = std::sin(outer[static_cast<std::size_t>(i)]);
        ds.y[static_cast<std::size_t>(i)] = 0;
    }
    const auto inner = even_angles(n1, 0.0, 2.0 * kPi, false);
    for (int i = 0; i < n1; ++i) {
        ds.x(n0 + i, 0) = radius_ratio * std::cos(inner[static_cast<std::size_t>(i)]);
        ds.x(n0 + i, 1) = radius_ratio * std::sin(inner[static_cast<std::size_t>(i)]);
        ds.y[static_cast<std::size_t>(n0 + i)] = 1;
    }
    jitter(ds.x, 0, n, noise_sigma, rng);
    return ds;
}

LabeledDataset gen_smile(int n, Rng rng) {
    require_size(n, 4, "gen_smile");
    int counts[4];
    const int base = n / 4;
    const int rem = n % 4;
    for (int c = 0; c < 4; ++c) counts[c] = base + (c < rem ? 1 : 0);

    LabeledDataset ds;
    ds.name = "smile";
    ds.x.resize(n, 2);
    ds.y.resize(static_cast<std::size_t>(n));
    Eigen::Index row = 0;

    const double eye_x[2] = {-0.4, 0.4};
    for (int c = 0; c < 2; ++c) {
        for (int i = 0; i < counts[c]; ++i, ++row) {
            ds.x(row, 0) = rng.next_normal(eye_x[c], 0.08);
            ds.x(row, 1) = rng.next_normal(0.35, 0.08);
            ds.y[static_cast<std::size_t>(row)] = c;
        }
    }

    const Eigen::Index mouth_begin = row;
    const auto mouth = even_angles(counts[2], 210.0 * kPi / 180.0,
                                   330.0 * kPi / 180.0, true);
    for (int i = 0; i < counts[2]; ++i, ++row) {
        ds.x(row, 0) = 0.6 * std::cos(mouth[static_cast<std::size_t>(i)]);
        ds.x(row, 1) = 0.6 * std::sin(mouth[static_cast<std::size_t>(i)]);
        ds.y[static_cast<std::size_t>(row)] = 2;
    }
    jitter(ds.x, mouth_begin, row, 0.02, rng);

    const Eigen::Index face_begin = row;
    const auto face = even_angles(counts[3], 0.0, 2.0 * kPi, false);
    for (int i = 0; i < counts[3]; ++i, ++row) {
        ds.x(row, 0) = std::cos(face[static_cast<std::size_t>(i)]);
        ds.x(row, 1) = std::sin(face[static_cast<std::size_t>(i)]);
        ds.y[static_cast<std::size_t>(row)] = 3;
    }
    jitter(ds.x, face_begin, row, 0.02, rng);
    return ds;
}

LabeledDataset gen_impossible(int n, Rng rng) {
    require_size(n, 100, "gen_impossible");
    const double props[7] = {0.248, 0.188, 0.113, 0.075, 0.125, 0.125, 0.125};
    int counts[7];
    int used = 0;
    for (int c = 0; c < 6; ++c) {
        counts[c] = static_cast<int>(std::lround(props[c] * n));
        used += counts[c];
    }
    counts[6] = n - used;

    LabeledDataset ds;
    ds.name = "impossible";
    ds.x.resize(n, 2);
    ds.y.resize(static_cast<std::size_t>(n));
    Eigen::Index row = 0;

    const double ring_radius[2] = {3.0, 1.7};
    for (int c = 0; c < 2; ++c) {
        const Eigen::Index begin = row;
        const auto angles = even_angles(counts[c], 0.0, 2.0 * kPi, false);
        for (int i = 0; i < counts[c]; ++i, ++row) {
            ds.x(row, 0) = ring_radius[c] * std::cos(angles[static_cast<std::size_t>(i)]);
            ds.x(row, 1) = ring_radius[c] * std::sin(angles[static_cast<std::size_t>(i)]);
            ds.y[static_cast<std::size_t>(row)] = c;
        }
        jitter(ds.x, begin, row, 0.10, rng);
    }

    const double spiral_cx = 7.3;
    for (int c = 2; c < 4; ++c) {
        const Eigen::Index begin = row;
        const double sign = (c == 2) ? 1.0 : -1.0;
        const auto us =
            spiral_params(counts[c], 0.5, 0.55, 0.6 * kPi, 1.7 * kPi);
        for (int i = 0; i < counts[c]; ++i, ++row) {
            const double u = us[static_cast<std::size_t>(i)];
            const double r = 0.5 + 0.55 * u;
            ds.x(row, 0) = spiral_cx + sign * r * std::cos(u);
            ds.x(row, 1) = sign * r * std::sin(u);
            ds.y[static_cast<std::size_t>(row)] = c;
        }
        jitter(ds.x, begin, row, 0.12, rng);
    }

    const double blob_centers[3][2] = {{-5.2, 2.1}, {-5.2, -2.1}, {-7.8, 0.0}};
    for (int c = 4; c < 7; ++c) {
        for (int i = 0; i < counts[c]; ++i, ++row) {
            ds.x(row, 0) = rng.next_normal(blob_centers[c - 4][0], 0.35);
            ds.x(row, 1) = rng.next_normal(blob_centers[c - 4][1], 0.35);
            ds.y[static_cast<std::size_t>(row)] = c;
        }
    }
    return ds;
}

LabeledDataset gen_blobs(int n, int dims, int classes, double sigma, Rng rng) {
    require_size(n, std::max(classes, 1), "gen_blobs");
    if (dims < 1) throw DimensionError("gen_blobs: dims must be >= 1");
    if (classes < 1) throw Error(ErrorKind::config, "gen_blobs: classes must be >= 1");
    require_sigma(sigma, "gen_blobs");

    Matrix centers(classes, dims);
    for (int c = 0; c < classes; ++c)
        for (int j = 0; j < dims; ++j)
            centers(c, j) = -10.0 + 20.0 * rng.next_double();

    LabeledDataset ds;
    ds.name = "blobs";
    ds.x.resize(n, dims);
    ds.y.resize(static_cast<std::size_t>(n));
    const int base = n / classes;
    const int rem = n % classes;
    Eigen::Index row = 0;
    for (int c = 0; c < classes; ++c) {
        const int count = base + (c < rem ? 1 : 0);
        for (int i = 0; i < count; ++i, ++row) {
            for (int j = 0; j < dims; ++j)
                ds.x(row, j) = rng.next_normal(centers(c, j), sigma);
            ds.y[static_cast<std::size_t>(row)] = c;
        }
    }
    return ds;
}

LabeledDataset add_gaussian_noise(const LabeledDataset& ds, double sigma, Rng rng) {
    require_sigma(sigma, "add_gaussian_noise");
    LabeledDataset out = ds;
    out.name = ds.name + "+gaussian";
    jitter(out.x, 0, out.x.rows(), sigma, rng);
    return out;
}

LabeledDataset add_uniform_noise(const LabeledDataset& ds, int count, Rng rng) {
    if (count < 0)
        throw Error(ErrorKind::config, "add_uniform_noise: count must be >= 0");
    LabeledDataset out;
    out.name = ds.name + "+uniform";
    const Eigen::Index n = ds.x.rows();
    const Eigen::Index d = ds.x.cols();
    out.x.resize(n + count, d);
    out.x.topRows(n) = ds.x;
    out.y = ds.y;

    const Eigen::RowVectorXd lo = ds.x.colwise().minCoeff();
    const Eigen::RowVectorXd hi = ds.x.colwise().maxCoeff();
    const int noise_label = ds.classes();
    for (int i = 0; i < count; ++i) {
        for (Eigen::Index j = 0; j < d; ++j)
            out.x(n + i, j) = lo[j] + (hi[j] - lo[j]) * rng.next_double();
        out.y.push_back(noise_label);
    }
    return out;
}

}  // namespace sbridge
