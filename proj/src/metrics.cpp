#include "sbridge/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <unordered_map>
#include <vector>

#include "sbridge/errors.hpp"

namespace sbridge {
namespace {

struct Contingency {
    std::vector<std::vector<double>> cells;  // rows: labels of a, cols: of b
    std::vector<double> row_sums;
    std::vector<double> col_sums;
    double n = 0.0;
};

int compact_id(std::unordered_map<int, int>& ids, int label) {
    auto it = ids.find(label);
    if (it == ids.end()) it = ids.emplace(label, static_cast<int>(ids.size())).first;
    return it->second;
}

Contingency contingency(std::span<const int> a, std::span<const int> b) {
    if (a.size() != b.size())
        throw LengthMismatch("metrics: labelings have different lengths");
    if (a.empty()) throw EmptyInput("metrics: empty labelings");

    std::unordered_map<int, int> ids_a;
    std::unordered_map<int, int> ids_b;
    std::vector<std::pair<int, int>> pairs;
    pairs.reserve(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        pairs.emplace_back(compact_id(ids_a, a[i]), compact_id(ids_b, b[i]));

    Contingency c;
    c.cells.assign(ids_a.size(), std::vector<double>(ids_b.size(), 0.0));
    c.row_sums.assign(ids_a.size(), 0.0);
    c.col_sums.assign(ids_b.size(), 0.0);
    c.n = static_cast<double>(a.size());
    for (const auto& [ra, cb] : pairs) {
        c.cells[static_cast<std::size_t>(ra)][static_cast<std::size_t>(cb)] += 1.0;
        c.row_sums[static_cast<std::size_t>(ra)] += 1.0;
        c.col_sums[static_cast<std::size_t>(cb)] += 1.0;
    }
    return c;
}

double pairs_of(double v) { return v * (v - 1.0) / 2.0; }

}  // namespace

double ari(std::span<const int> a, std::span<const int> b) {
    const Contingency c = contingency(a, b);
    double index = 0.0;
    for (const auto& row : c.cells)
        for (double v : row) index += pairs_of(v);
    double sum_a = 0.0;
    for (double v : c.row_sums) sum_a += pairs_of(v);
    double sum_b = 0.0;
    for (double v : c.col_sums) sum_b += pairs_of(v);

    const double total = pairs_of(c.n);
    const double expected = (total > 0.0) ? sum_a * sum_b / total : 0.0;
    const double maximum = 0.5 * (sum_a + sum_b);
    const double denom = maximum - expected;
    // denom == 0 only when both partitions are all singletons or both are a
    // single cluster; either way they are identical.
    if (denom == 0.0) return 1.0;
    return (index - expected) / denom;
}

double nmi(std::span<const int> a, std::span<const int> b) {
    const Contingency c = contingency(a, b);

    double h_a = 0.0;
    for (double v : c.row_sums)
        if (v > 0.0) h_a -= (v / c.n) * std::log(v / c.n);
    double h_b = 0.0;
    for (double v : c.col_sums)
        if (v > 0.0) h_b -= (v / c.n) * std::log(v / c.n);
    if (h_a == 0.0 && h_b == 0.0) return 1.0;

    double mi = 0.0;
    for (std::size_t i = 0; i < c.cells.size(); ++i) {
        for (std::size_t j = 0; j < c.cells[i].size(); ++j) {
            const double nij = c.cells[i][j];
            if (nij == 0.0) continue;
            mi += (nij / c.n) *
                  std::log(nij * c.n / (c.row_sums[i] * c.col_sums[j]));
        }
    }
    const double score = mi / (0.5 * (h_a + h_b));
    return std::clamp(score, 0.0, 1.0);
}

}  // namespace sbridge
