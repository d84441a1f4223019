#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "kgex/catalog.hpp"
#include "kgex/features.hpp"
#include "kgex/profile.hpp"

namespace kgex {

enum class FactualVerdict : std::uint8_t { Factual, NonFactual };
enum class PreferenceVerdict : std::uint8_t { AlignedHist, AlignedProxy, Inconsistent };

const char* to_string(FactualVerdict v);
const char* to_string(PreferenceVerdict v);

struct FeatureVerdict {
    std::string feature;
    FactualVerdict factual = FactualVerdict::Factual;
    PreferenceVerdict preference = PreferenceVerdict::AlignedHist;
    double proxy_score = 0.0;
};

/// One scored (user, item, explanation) record. Instances whose extracted
/// feature set is empty are unscoreable: they carry no rates and are
/// excluded from corpus means rather than silently scored 0.
struct EvalInstance {
    std::string user_id;
    std::string item_id;
    std::string explanation;
    FeatureSet generated;
    std::set<std::string> item_features;
    std::vector<FeatureVerdict> verdicts;
    bool scoreable = false;
    double f_ehr = 0.0;
    double p_ehr = 0.0;
};

/// Raw input record; `provided_features`, when present, bypasses the
/// lexicon matcher (the pre-extracted input path).
struct EvalInstanceSource {
    std::string user_id;
    std::string item_id;
    std::string explanation;
    std::optional<std::vector<std::string>> provided_features;
};

struct TauSweepRow {
    double tau = 0.0;
    double p_ehr = 0.0;
};

struct EvalReport {
    double corpus_f_ehr = 0.0;
    double corpus_p_ehr = 0.0;
    std::vector<EvalInstance> instances;
    size_t scoreable_count = 0;
    size_t unscoreable_count = 0;
    std::map<std::string, size_t> verdict_histogram;
    std::vector<TauSweepRow> tau_sweep;
};

/// Fraction of generated features absent from the item's ground-truth set.
double f_ehr_rate(const std::set<std::string>& generated,
                  const std::set<std::string>& item_features);

/// Fraction of generated features failing both validity clauses (not in
/// F_u^hist+ and proxy score below tau).
double p_ehr_rate(const std::set<std::string>& generated, const PreferenceProfile& profile,
                  const TextEncoder& encoder);

EvalInstance evaluate_instance(const EvalInstanceSource& source, const ItemCatalog& cat,
                               const PreferenceProfile& profile, const TextEncoder& encoder,
                               const std::set<std::string>& vocabulary);

struct EvalOptions {
    double tau = kDefaultProxyThreshold;
    std::vector<double> tau_grid;   // optional P-EHR sweep
    size_t jobs = 1;
};

/// Corpus-level report: per-instance rates plus means over scoreable
/// instances. Throws Error when no instance is scoreable. Profiles are
/// rebuilt per user from the histories at the configured tau.
EvalReport evaluate_corpus(const std::vector<EvalInstanceSource>& sources,
                           const ItemCatalog& cat, const UserHistories& histories,
                           const TextEncoder& encoder, const std::set<std::string>& vocabulary,
                           const EvalOptions& options);

} // namespace kgex
