#include "roadprio/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>

#include <json.hpp>

namespace roadprio {

namespace {

using nlohmann::json;

void check_costs_positive(std::span<const double> cost) {
    for (std::size_t i = 0; i < cost.size(); ++i) {
        if (!(cost[i] > 0.0) || !std::isfinite(cost[i])) {
            throw ValidationError("cost of test " + std::to_string(i) +
                                  " must be a positive number");
        }
    }
}

void check_order_inputs(const TestOrder& order, std::span<const double> cost,
                        const FaultProfile& faults) {
    const std::size_t n = order.size();
    if (cost.size() != n || faults.detects.size() != n) {
        throw ValidationError("order, cost vector and fault profile must have equal length");
    }
    if (!is_permutation_of(order, n)) {
        throw ValidationError("order is not a permutation of the test indices");
    }
    check_costs_positive(cost);
}

} // namespace

FaultProfile fault_profile(std::span<const RoadScenario> corpus) {
    FaultProfile profile;
    profile.detects.reserve(corpus.size());
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        if (!corpus[i].label) {
            throw ValidationError("scenario \"" + corpus[i].id +
                                  "\" has no label; evaluation corpora must be labeled");
        }
        const bool unsafe = *corpus[i].label == Label::Unsafe;
        profile.detects.push_back(unsafe);
        if (unsafe) {
            ++profile.fault_count;
        }
    }
    return profile;
}

std::optional<double> apfd_c(const TestOrder& order, std::span<const double> cost,
                             const FaultProfile& faults) {
    check_order_inputs(order, cost, faults);
    if (faults.fault_count == 0) {
        return std::nullopt;
    }

    const std::size_t n = order.size();
    // suffix[p] = sum of the costs of the tests at positions p..n (1-based).
    std::vector<double> suffix(n + 1, 0.0);
    for (std::size_t p = n; p >= 1; --p) {
        suffix[p - 1] = suffix[p] + cost[order.perm[p - 1]];
    }
    const double total = suffix[0];

    double numerator = 0.0;
    for (std::size_t p = 1; p <= n; ++p) {
        const std::uint32_t test = order.perm[p - 1];
        if (faults.detects[test]) {
            numerator += suffix[p - 1] - 0.5 * cost[test];
        }
    }
    return numerator / (total * static_cast<double>(faults.fault_count));
}

std::vector<CurvePoint> detection_curve(const TestOrder& order,
                                        std::span<const double> cost,
                                        const FaultProfile& faults) {
    check_order_inputs(order, cost, faults);
    std::vector<CurvePoint> curve;
    curve.reserve(order.size());
    double cum_cost = 0.0;
    int cum_faults = 0;
    for (std::uint32_t test : order.perm) {
        cum_cost += cost[test];
        if (faults.detects[test]) {
            ++cum_faults;
        }
        curve.push_back({cum_cost, cum_faults});
    }
    return curve;
}

int faults_within_budget(std::span<const CurvePoint> curve, double budget) {
    int faults = 0;
    for (const CurvePoint& p : curve) {
        if (p.cum_cost > budget) {
            break;
        }
        faults = p.cum_faults;
    }
    return faults;
}

double a12(std::span<const double> sample_a, std::span<const double> sample_b) {
    if (sample_a.empty() || sample_b.empty()) {
        throw ValidationError("a12 requires two non-empty samples");
    }
    double wins = 0.0;
    for (double a : sample_a) {
        for (double b : sample_b) {
            if (a > b) {
                wins += 1.0;
            } else if (a == b) {
                wins += 0.5;
            }
        }
    }
    return wins / (static_cast<double>(sample_a.size()) * static_cast<double>(sample_b.size()));
}

RankSumResult wilcoxon_rank_sum(std::span<const double> sample_a,
                                std::span<const double> sample_b) {
    RankSumResult result;
    const std::size_t n1 = sample_a.size();
    const std::size_t n2 = sample_b.size();
    if (n1 < 3 || n2 < 3) {
        result.sufficient_n = false;
        return result;
    }
    result.sufficient_n = true;

    struct Obs {
        double value;
        bool from_a;
    };
    std::vector<Obs> pooled;
    pooled.reserve(n1 + n2);
    for (double v : sample_a) {
        pooled.push_back({v, true});
    }
    for (double v : sample_b) {
        pooled.push_back({v, false});
    }
    std::sort(pooled.begin(), pooled.end(),
              [](const Obs& x, const Obs& y) { return x.value < y.value; });

    // Average ranks within tie groups; accumulate the tie correction term.
    const std::size_t n = n1 + n2;
    double rank_sum_a = 0.0;
    double tie_term = 0.0; // sum of t^3 - t over tie groups
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j < n && pooled[j].value == pooled[i].value) {
            ++j;
        }
        const double t = static_cast<double>(j - i);
        const double avg_rank = 0.5 * (static_cast<double>(i + 1) + static_cast<double>(j));
        for (std::size_t k = i; k < j; ++k) {
            if (pooled[k].from_a) {
                rank_sum_a += avg_rank;
            }
        }
        tie_term += t * t * t - t;
        i = j;
    }
    result.statistic = rank_sum_a;

    const double dn1 = static_cast<double>(n1);
    const double dn2 = static_cast<double>(n2);
    const double dn = static_cast<double>(n);
    const double mean = dn1 * (dn + 1.0) / 2.0;
    const double variance =
        dn1 * dn2 / 12.0 * ((dn + 1.0) - tie_term / (dn * (dn - 1.0)));
    if (variance <= 0.0) {
        // Every pooled value tied: no evidence of a difference.
        result.p_value = 1.0;
        result.significant = false;
        return result;
    }

    double num = rank_sum_a - mean;
    // Continuity correction toward the mean.
    if (num > 0.5) {
        num -= 0.5;
    } else if (num < -0.5) {
        num += 0.5;
    } else {
        num = 0.0;
    }
    const double z = num / std::sqrt(variance);
    result.p_value = std::min(1.0, std::erfc(std::abs(z) / std::sqrt(2.0)));
    result.significant = result.p_value < 0.05;
    return result;
}

EffectMagnitude magnitude(double a12_value) {
    if (!(a12_value >= 0.0 && a12_value <= 1.0)) {
        throw ValidationError("a12 value must lie in [0, 1]");
    }
    const double dev = std::abs(a12_value - 0.5);
    if (dev < 0.06) {
        return EffectMagnitude::Negligible;
    }
    if (dev < 0.14) {
        return EffectMagnitude::Small;
    }
    if (dev < 0.21) {
        return EffectMagnitude::Medium;
    }
    return EffectMagnitude::Large;
}

const char* to_string(EffectMagnitude m) {
    switch (m) {
        case EffectMagnitude::Negligible: return "negligible";
        case EffectMagnitude::Small: return "small";
        case EffectMagnitude::Medium: return "medium";
        case EffectMagnitude::Large: return "large";
    }
    return "negligible";
}

void write_apfdc_csv(const EvalReport& report, std::ostream& out) {
    out << "strategy,seed,apfdc\n";
    for (const RunRecord& run : report.runs) {
        out << run.strategy << ',' << run.seed << ',';
        if (run.apfdc) {
            out << format_double(*run.apfdc);
        } else {
            out << "no-faults";
        }
        out << '\n';
    }
}

void write_curves_csv(const EvalReport& report, std::ostream& out) {
    out << "strategy,seed,position,cum_cost,cum_faults\n";
    for (const CurveSample& sample : report.curve_samples) {
        for (std::size_t p = 0; p < sample.curve.size(); ++p) {
            out << sample.strategy << ',' << sample.seed << ',' << (p + 1) << ','
                << format_double(sample.curve[p].cum_cost) << ','
                << sample.curve[p].cum_faults << '\n';
        }
    }
}

void write_comparisons_csv(const EvalReport& report, std::ostream& out) {
    out << "dataset,vs_baseline,a12,p,magnitude\n";
    for (const Comparison& c : report.comparisons) {
        out << report.dataset << ',' << c.baseline << ',' << format_double(c.a12_value)
            << ',' << format_double(c.ranksum.p_value) << ',' << to_string(c.effect)
            << '\n';
    }
}

std::string report_to_json(const EvalReport& report) {
    json doc;
    doc["dataset"] = report.dataset;
    doc["total_cost_s"] = report.total_cost_s;
    doc["fault_count"] = report.fault_count;
    doc["pipeline_wall_ms"] = report.pipeline_wall_ms;

    json runs = json::array();
    for (const RunRecord& run : report.runs) {
        json r = {{"strategy", run.strategy},
                  {"seed", run.seed},
                  {"search_wall_ms", run.search_wall_ms}};
        r["apfdc"] = run.apfdc ? json(*run.apfdc) : json("no-faults");
        r["fitness"] = run.fitness ? json(*run.fitness) : json(nullptr);
        runs.push_back(std::move(r));
    }
    doc["runs"] = std::move(runs);

    json summaries = json::array();
    for (const StrategySummary& s : report.summaries) {
        summaries.push_back({{"strategy", s.strategy},
                             {"mean_apfdc", s.mean_apfdc},
                             {"min_apfdc", s.min_apfdc},
                             {"max_apfdc", s.max_apfdc},
                             {"mean_search_wall_ms", s.mean_search_wall_ms},
                             {"overhead_fraction", s.overhead_fraction}});
    }
    doc["summaries"] = std::move(summaries);

    json comparisons = json::array();
    for (const Comparison& c : report.comparisons) {
        comparisons.push_back({{"baseline", c.baseline},
                               {"a12", c.a12_value},
                               {"statistic", c.ranksum.statistic},
                               {"p", c.ranksum.p_value},
                               {"significant", c.ranksum.significant},
                               {"magnitude", to_string(c.effect)}});
    }
    doc["comparisons"] = std::move(comparisons);

    json samples = json::array();
    for (const CurveSample& sample : report.curve_samples) {
        samples.push_back({{"strategy", sample.strategy}, {"seed", sample.seed}});
    }
    doc["curve_samples"] = std::move(samples);
    return doc.dump(2) + "\n";
}

} // namespace roadprio
