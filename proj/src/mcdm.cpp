#include "ptx/mcdm.hpp"

#include "ptx/csv.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <stdexcept>

namespace ptx::mcdm {

void WeightVector::validate() const
{
    double sum = 0.0;
    for (double w : weights) {
        if (!(w >= 0.0))
            throw std::invalid_argument("negative criterion weight");
        sum += w;
    }
    if (std::abs(sum - 1.0) > 1e-12)
        throw std::invalid_argument("weights sum to " + csv::format_double(sum) + ", expected 1");
}

NormalizedMatrix minmax_normalize(const kpi::DecisionMatrix& matrix)
{
    matrix.validate();
    const size_t m = matrix.n_alternatives();
    const size_t n = matrix.n_criteria();
    NormalizedMatrix out;
    out.source = matrix;
    out.values.assign(m, std::vector<double>(n, 0.5));
    for (size_t j = 0; j < n; ++j) {
        double lo = matrix.values[0][j];
        double hi = lo;
        for (size_t i = 1; i < m; ++i) {
            lo = std::min(lo, matrix.values[i][j]);
            hi = std::max(hi, matrix.values[i][j]);
        }
        if (hi == lo)
            continue; // constant column stays at the neutral 0.5
        const bool benefit = matrix.criteria[j].orientation == kpi::Orientation::Benefit;
        for (size_t i = 0; i < m; ++i) {
            const double x = matrix.values[i][j];
            out.values[i][j] = benefit ? (x - lo) / (hi - lo) : (hi - x) / (hi - lo);
        }
    }
    return out;
}

WeightVector equal_weights(size_t n_criteria)
{
    if (n_criteria == 0)
        throw std::invalid_argument("no criteria");
    return {std::vector<double>(n_criteria, 1.0 / static_cast<double>(n_criteria))};
}

EntropyBasis parse_entropy_basis(const std::string& name)
{
    if (name == "raw")
        return EntropyBasis::RawColumns;
    if (name == "normalized")
        return EntropyBasis::NormalizedColumns;
    throw std::invalid_argument("unknown entropy basis '" + name + "' (want raw|normalized)");
}

const char* entropy_basis_name(EntropyBasis basis)
{
    return basis == EntropyBasis::RawColumns ? "raw" : "normalized";
}

WeightVector entropy_weights(const NormalizedMatrix& norm, EntropyBasis basis)
{
    const size_t m = norm.n_alternatives();
    const size_t n = norm.n_criteria();
    if (m < 2)
        throw std::invalid_argument("entropy weights need at least 2 alternatives");
    const bool use_raw = basis == EntropyBasis::RawColumns;

    std::vector<double> divergence(n, 0.0);
    for (size_t j = 0; j < n; ++j) {
        // Proportions need non-negative data; a signed raw column falls back
        // to its normalized values, which live in [0,1] by construction.
        bool raw_ok = use_raw;
        if (use_raw)
            for (size_t i = 0; i < m; ++i)
                raw_ok = raw_ok && norm.source.values[i][j] >= 0.0;
        const auto& data = raw_ok ? norm.source.values : norm.values;

        double sum = 0.0;
        bool constant = true;
        for (size_t i = 0; i < m; ++i) {
            sum += data[i][j];
            if (data[i][j] != data[0][j])
                constant = false;
        }
        if (constant || sum <= 0.0)
            continue; // zero information
        double h = 0.0;
        for (size_t i = 0; i < m; ++i) {
            const double p = data[i][j] / sum;
            if (p > 0.0)
                h -= p * std::log(p);
        }
        const double e = h / std::log(static_cast<double>(m));
        divergence[j] = 1.0 - e;
    }
    const double total = std::accumulate(divergence.begin(), divergence.end(), 0.0);
    if (total <= 0.0)
        return equal_weights(n);
    WeightVector w;
    w.weights.resize(n);
    for (size_t j = 0; j < n; ++j)
        w.weights[j] = divergence[j] / total;
    return w;
}

WeightVector hybrid_weights(const NormalizedMatrix& norm, EntropyBasis basis)
{
    const WeightVector entropy = entropy_weights(norm, basis);
    const size_t n = entropy.weights.size();
    WeightVector w;
    w.weights.resize(n);
    for (size_t j = 0; j < n; ++j)
        w.weights[j] = 0.5 * (1.0 / static_cast<double>(n)) + 0.5 * entropy.weights[j];
    return w;
}

const char* method_name(Method m)
{
    switch (m) {
    case Method::Topsis: return "topsis";
    case Method::Promethee2: return "promethee2";
    case Method::Vikor: return "vikor";
    }
    return "?";
}

namespace {

/// Ranks 1..m, best first. `descending` picks whether large scores win.
std::vector<int> rank_scores(const std::vector<double>& scores, bool descending)
{
    const size_t m = scores.size();
    std::vector<size_t> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
        if (scores[a] != scores[b])
            return descending ? scores[a] > scores[b] : scores[a] < scores[b];
        return a < b; // ties broken by alternative order
    });
    std::vector<int> ranks(m);
    for (size_t pos = 0; pos < m; ++pos)
        ranks[order[pos]] = static_cast<int>(pos) + 1;
    return ranks;
}

void check_dims(size_t n_matrix, size_t n_weights)
{
    if (n_matrix != n_weights)
        throw std::invalid_argument("weight count " + std::to_string(n_weights) +
                                    " does not match criterion count " + std::to_string(n_matrix));
}

MethodRanking topsis_on(const std::vector<std::vector<double>>& v)
{
    const size_t m = v.size();
    const size_t n = v[0].size();
    std::vector<double> ideal(n), anti(n);
    for (size_t j = 0; j < n; ++j) {
        double hi = v[0][j], lo = v[0][j];
        for (size_t i = 1; i < m; ++i) {
            hi = std::max(hi, v[i][j]);
            lo = std::min(lo, v[i][j]);
        }
        ideal[j] = hi;
        anti[j] = lo;
    }
    MethodRanking out;
    out.method = Method::Topsis;
    out.scores.resize(m);
    for (size_t i = 0; i < m; ++i) {
        double dp = 0.0, dm = 0.0;
        for (size_t j = 0; j < n; ++j) {
            dp += (v[i][j] - ideal[j]) * (v[i][j] - ideal[j]);
            dm += (v[i][j] - anti[j]) * (v[i][j] - anti[j]);
        }
        dp = std::sqrt(dp);
        dm = std::sqrt(dm);
        out.scores[i] = (dp + dm == 0.0) ? 0.5 : dm / (dp + dm);
    }
    out.ranks = rank_scores(out.scores, true);
    return out;
}

} // namespace

MethodRanking topsis(const NormalizedMatrix& norm, const WeightVector& w)
{
    check_dims(norm.n_criteria(), w.weights.size());
    w.validate();
    const size_t m = norm.n_alternatives();
    const size_t n = norm.n_criteria();
    std::vector<std::vector<double>> v(m, std::vector<double>(n));
    for (size_t i = 0; i < m; ++i)
        for (size_t j = 0; j < n; ++j)
            v[i][j] = w.weights[j] * norm.values[i][j];
    return topsis_on(v);
}

MethodRanking topsis_classical(const kpi::DecisionMatrix& matrix, const WeightVector& w)
{
    matrix.validate();
    check_dims(matrix.n_criteria(), w.weights.size());
    w.validate();
    const size_t m = matrix.n_alternatives();
    const size_t n = matrix.n_criteria();
    std::vector<std::vector<double>> v(m, std::vector<double>(n));
    for (size_t j = 0; j < n; ++j) {
        double norm2 = 0.0;
        for (size_t i = 0; i < m; ++i)
            norm2 += matrix.values[i][j] * matrix.values[i][j];
        const double denom = norm2 > 0.0 ? std::sqrt(norm2) : 1.0;
        // Cost criteria flip sign so the ideal stays the column max.
        const double sign = matrix.criteria[j].orientation == kpi::Orientation::Benefit ? 1.0 : -1.0;
        for (size_t i = 0; i < m; ++i)
            v[i][j] = sign * w.weights[j] * matrix.values[i][j] / denom;
    }
    return topsis_on(v);
}

MethodRanking promethee2(const NormalizedMatrix& norm, const WeightVector& w,
                         const PreferenceSpec& preference)
{
    check_dims(norm.n_criteria(), w.weights.size());
    w.validate();
    const size_t m = norm.n_alternatives();
    const size_t n = norm.n_criteria();
    if (m < 2)
        throw std::invalid_argument("PROMETHEE needs at least 2 alternatives");

    std::vector<double> thresholds;
    if (preference.family == PreferenceSpec::Family::Linear) {
        if (preference.thresholds.size() == 1)
            thresholds.assign(n, preference.thresholds[0]);
        else if (preference.thresholds.size() == n)
            thresholds = preference.thresholds;
        else
            throw std::invalid_argument("linear preference needs 1 or n thresholds");
        for (double p : thresholds)
            if (!(p > 0.0))
                throw std::invalid_argument("linear preference threshold must be positive");
    }

    auto pref = [&](double d, size_t j) {
        if (d <= 0.0)
            return 0.0;
        if (preference.family == PreferenceSpec::Family::Usual)
            return 1.0;
        return std::min(d / thresholds[j], 1.0);
    };

    std::vector<double> phi_plus(m, 0.0), phi_minus(m, 0.0);
    for (size_t a = 0; a < m; ++a) {
        for (size_t b = 0; b < m; ++b) {
            if (a == b)
                continue;
            double pi = 0.0;
            for (size_t j = 0; j < n; ++j)
                pi += w.weights[j] * pref(norm.values[a][j] - norm.values[b][j], j);
            phi_plus[a] += pi;
            phi_minus[b] += pi;
        }
    }
    MethodRanking out;
    out.method = Method::Promethee2;
    out.scores.resize(m);
    out.promethee.phi_plus.resize(m);
    out.promethee.phi_minus.resize(m);
    const double denom = static_cast<double>(m - 1);
    for (size_t i = 0; i < m; ++i) {
        out.promethee.phi_plus[i] = phi_plus[i] / denom;
        out.promethee.phi_minus[i] = phi_minus[i] / denom;
        out.scores[i] = out.promethee.phi_plus[i] - out.promethee.phi_minus[i];
    }
    out.ranks = rank_scores(out.scores, true);
    return out;
}

MethodRanking vikor(const kpi::DecisionMatrix& matrix, const WeightVector& w, double v)
{
    matrix.validate();
    check_dims(matrix.n_criteria(), w.weights.size());
    w.validate();
    if (v < 0.0 || v > 1.0)
        throw std::invalid_argument("VIKOR v must lie in [0,1]");
    const size_t m = matrix.n_alternatives();
    const size_t n = matrix.n_criteria();

    std::vector<double> s(m, 0.0), r(m, 0.0);
    for (size_t j = 0; j < n; ++j) {
        const bool benefit = matrix.criteria[j].orientation == kpi::Orientation::Benefit;
        double best = matrix.values[0][j], worst = matrix.values[0][j];
        for (size_t i = 1; i < m; ++i) {
            const double x = matrix.values[i][j];
            best = benefit ? std::max(best, x) : std::min(best, x);
            worst = benefit ? std::min(worst, x) : std::max(worst, x);
        }
        if (best == worst)
            continue; // constant column contributes nothing
        for (size_t i = 0; i < m; ++i) {
            const double term = w.weights[j] * (best - matrix.values[i][j]) / (best - worst);
            s[i] += term;
            r[i] = std::max(r[i], term);
        }
    }
    const auto [s_best_it, s_worst_it] = std::minmax_element(s.begin(), s.end());
    const auto [r_best_it, r_worst_it] = std::minmax_element(r.begin(), r.end());
    const double s_best = *s_best_it, s_worst = *s_worst_it;
    const double r_best = *r_best_it, r_worst = *r_worst_it;

    MethodRanking out;
    out.method = Method::Vikor;
    out.scores.resize(m);
    for (size_t i = 0; i < m; ++i) {
        double q = 0.0;
        if (s_worst != s_best)
            q += v * (s[i] - s_best) / (s_worst - s_best);
        if (r_worst != r_best)
            q += (1.0 - v) * (r[i] - r_best) / (r_worst - r_best);
        out.scores[i] = q;
    }
    out.ranks = rank_scores(out.scores, false); // ascending: small Q wins
    out.vikor.s = s;
    out.vikor.r = r;
    out.vikor.q = out.scores;

    size_t q1 = 0, q2 = 0;
    for (size_t i = 0; i < m; ++i) {
        if (out.ranks[i] == 1)
            q1 = i;
        if (out.ranks[i] == 2)
            q2 = i;
    }
    if (m >= 2) {
        out.vikor.acceptable_advantage =
            out.scores[q2] - out.scores[q1] >= 1.0 / static_cast<double>(m - 1);
        const double s_min = s_best, r_min = r_best;
        out.vikor.acceptable_stability = s[q1] == s_min || r[q1] == r_min;
    }
    return out;
}

StudyRanking aggregate(const std::vector<std::string>& alternatives,
                       const std::vector<MethodRanking>& rankings)
{
    const size_t m = alternatives.size();
    if (rankings.empty())
        throw std::invalid_argument("no method rankings to aggregate");
    for (const MethodRanking& r : rankings)
        if (r.ranks.size() != m)
            throw std::invalid_argument("method ranking covers a different alternative set");

    StudyRanking out;
    out.alternatives = alternatives;
    out.methods = rankings;
    out.aggregate_score.resize(m);
    for (size_t i = 0; i < m; ++i) {
        double sum = 0.0;
        for (const MethodRanking& r : rankings)
            sum += static_cast<double>(m + 1) - static_cast<double>(r.ranks[i]);
        out.aggregate_score[i] = sum / static_cast<double>(rankings.size());
    }
    // Final order: descending score, ties by label order.
    std::vector<size_t> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
        if (out.aggregate_score[a] != out.aggregate_score[b])
            return out.aggregate_score[a] > out.aggregate_score[b];
        return alternatives[a] < alternatives[b];
    });
    out.final_position.resize(m);
    for (size_t pos = 0; pos < m; ++pos)
        out.final_position[order[pos]] = static_cast<int>(pos) + 1;
    return out;
}

double spearman(const std::vector<int>& ranks_a, const std::vector<int>& ranks_b)
{
    if (ranks_a.size() != ranks_b.size() || ranks_a.empty())
        throw std::invalid_argument("rank vectors must have equal, nonzero length");
    const double n = static_cast<double>(ranks_a.size());
    if (ranks_a.size() == 1)
        return 1.0;
    double d2 = 0.0;
    for (size_t i = 0; i < ranks_a.size(); ++i) {
        const double d = static_cast<double>(ranks_a[i] - ranks_b[i]);
        d2 += d * d;
    }
    return 1.0 - 6.0 * d2 / (n * (n * n - 1.0));
}

void write_rankings_csv(const StudyRanking& ranking, const std::filesystem::path& path,
                        const std::string& provenance)
{
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot write " + path.string());
    out << provenance;
    out << "alternative";
    for (const MethodRanking& r : ranking.methods)
        out << "," << method_name(r.method) << "_score," << method_name(r.method) << "_rank";
    out << ",aggregate_score,final_position\n";
    for (size_t i = 0; i < ranking.alternatives.size(); ++i) {
        out << ranking.alternatives[i];
        for (const MethodRanking& r : ranking.methods)
            out << "," << csv::format_double(r.scores[i]) << "," << r.ranks[i];
        out << "," << csv::format_double(ranking.aggregate_score[i]) << ","
            << ranking.final_position[i] << "\n";
    }
}

void write_weights_csv(const std::vector<std::string>& criteria, const WeightVector& equal,
                       const WeightVector& entropy, const WeightVector& hybrid,
                       const std::filesystem::path& path, const std::string& provenance)
{
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot write " + path.string());
    out << provenance;
    out << "criterion,equal,entropy,hybrid\n";
    for (size_t j = 0; j < criteria.size(); ++j) {
        out << criteria[j] << "," << csv::format_double(equal.weights[j]) << ","
            << csv::format_double(entropy.weights[j]) << ","
            << csv::format_double(hybrid.weights[j]) << "\n";
    }
}

} // namespace ptx::mcdm
