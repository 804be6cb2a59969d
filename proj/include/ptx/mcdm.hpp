#pragma once

#include "ptx/kpi.hpp"

#include <string>
#include <vector>

namespace ptx::mcdm {

/// Min-max normalized matrix, all criteria oriented so larger is better.
/// Keeps its source so weighting schemes can reach the raw values.
struct NormalizedMatrix {
    std::vector<std::vector<double>> values;
    kpi::DecisionMatrix source;

    size_t n_alternatives() const { return values.size(); }
    size_t n_criteria() const { return values.empty() ? 0 : values[0].size(); }
};

struct WeightVector {
    std::vector<double> weights; // non-negative, sums to 1
    void validate() const;
};

/// Benefit: (x-min)/(max-min); cost: (max-x)/(max-min); constant column: 0.5.
NormalizedMatrix minmax_normalize(const kpi::DecisionMatrix& matrix);

WeightVector equal_weights(size_t n_criteria);

/// Which values feed the Shannon entropy measure. RawColumns is the
/// classical formulation (p_ij = x_ij / sum_i x_ij on the source data);
/// NormalizedColumns runs the same formula on the oriented normalized
/// values instead.
enum class EntropyBasis { RawColumns, NormalizedColumns };

EntropyBasis parse_entropy_basis(const std::string& name);
const char* entropy_basis_name(EntropyBasis basis);

/// Shannon entropy weights: e_j = -(1/ln m) sum_i p_ij ln p_ij with
/// 0 ln 0 = 0, d_j = 1 - e_j, w_j = d_j / sum d. Constant columns get
/// d_j = 0; if every column is constant, falls back to equal weights.
WeightVector entropy_weights(const NormalizedMatrix& norm,
                             EntropyBasis basis = EntropyBasis::RawColumns);

/// Arithmetic mean of equal and entropy weights, per criterion.
WeightVector hybrid_weights(const NormalizedMatrix& norm,
                            EntropyBasis basis = EntropyBasis::RawColumns);

enum class Method { Topsis, Promethee2, Vikor };
const char* method_name(Method m);

struct VikorDiagnostics {
    std::vector<double> s; // group utility
    std::vector<double> r; // individual regret
    std::vector<double> q; // compromise index
    bool acceptable_advantage = false;
    bool acceptable_stability = false;
};

struct PrometheeDiagnostics {
    std::vector<double> phi_plus;
    std::vector<double> phi_minus;
};

struct MethodRanking {
    Method method = Method::Topsis;
    std::vector<double> scores; // higher is better for TOPSIS/PROMETHEE, Q for VIKOR
    std::vector<int> ranks;     // 1 = best, permutation of 1..m
    VikorDiagnostics vikor;
    PrometheeDiagnostics promethee;
};

struct PreferenceSpec {
    enum class Family { Usual, Linear } family = Family::Usual;
    /// Linear preference thresholds on the normalized scale, one per
    /// criterion; a single entry applies to all criteria.
    std::vector<double> thresholds;
};

/// TOPSIS on the weighted min-max-normalized matrix (the default route).
MethodRanking topsis(const NormalizedMatrix& norm, const WeightVector& w);

/// Classical TOPSIS with vector normalization on the raw matrix; offered
/// for sensitivity runs.
MethodRanking topsis_classical(const kpi::DecisionMatrix& matrix, const WeightVector& w);

MethodRanking promethee2(const NormalizedMatrix& norm, const WeightVector& w,
                         const PreferenceSpec& preference = {});

MethodRanking vikor(const kpi::DecisionMatrix& matrix, const WeightVector& w, double v = 0.5);

struct StudyRanking {
    std::vector<std::string> alternatives;
    std::vector<MethodRanking> methods;
    std::vector<double> aggregate_score; // mean over methods of (m + 1 - rank)
    std::vector<int> final_position;     // 1 = best by aggregate score
};

StudyRanking aggregate(const std::vector<std::string>& alternatives,
                       const std::vector<MethodRanking>& rankings);

/// Spearman rank correlation between two rank permutations of 1..n.
double spearman(const std::vector<int>& ranks_a, const std::vector<int>& ranks_b);

void write_rankings_csv(const StudyRanking& ranking, const std::filesystem::path& path,
                        const std::string& provenance);
void write_weights_csv(const std::vector<std::string>& criteria, const WeightVector& equal,
                       const WeightVector& entropy, const WeightVector& hybrid,
                       const std::filesystem::path& path, const std::string& provenance);

} // namespace ptx::mcdm
