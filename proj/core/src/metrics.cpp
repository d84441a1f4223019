#include "kgex/metrics.hpp"

#include <algorithm>

#include "kgex/error.hpp"
#include "kgex/parallel.hpp"
#include "kgex/text.hpp"

namespace kgex {

const char* to_string(FactualVerdict v) {
    return v == FactualVerdict::Factual ? "FACTUAL" : "NONFACTUAL";
}

const char* to_string(PreferenceVerdict v) {
    switch (v) {
        case PreferenceVerdict::AlignedHist: return "ALIGNED_HIST";
        case PreferenceVerdict::AlignedProxy: return "ALIGNED_PROXY";
        case PreferenceVerdict::Inconsistent: return "INCONSISTENT";
    }
    return "INCONSISTENT";
}

double f_ehr_rate(const std::set<std::string>& generated,
                  const std::set<std::string>& item_features) {
    if (generated.empty()) throw Error("f_ehr is undefined for an empty feature set");
    size_t non_factual = 0;
    for (const auto& f : generated) {
        if (!item_features.count(f)) ++non_factual;
    }
    return static_cast<double>(non_factual) / static_cast<double>(generated.size());
}

double p_ehr_rate(const std::set<std::string>& generated, const PreferenceProfile& profile,
                  const TextEncoder& encoder) {
    if (generated.empty()) throw Error("p_ehr is undefined for an empty feature set");
    size_t penalized = 0;
    for (const auto& f : generated) {
        if (!preference_proxy(profile, f, encoder).valid) ++penalized;
    }
    return static_cast<double>(penalized) / static_cast<double>(generated.size());
}

EvalInstance evaluate_instance(const EvalInstanceSource& source, const ItemCatalog& cat,
                               const PreferenceProfile& profile, const TextEncoder& encoder,
                               const std::set<std::string>& vocabulary) {
    EvalInstance inst;
    inst.user_id = source.user_id;
    inst.item_id = source.item_id;
    inst.explanation = source.explanation;
    inst.item_features = cat.item_features(source.item_id);

    if (source.provided_features) {
        inst.generated.provenance = FeatureProvenance::Provided;
        for (const auto& f : *source.provided_features) {
            std::string norm = normalize_feature(f);
            if (!norm.empty()) inst.generated.features.insert(norm);
        }
    } else {
        inst.generated = extract_features(source.explanation, vocabulary);
    }

    if (inst.generated.empty()) {
        inst.scoreable = false;
        return inst;
    }
    inst.scoreable = true;

    size_t non_factual = 0;
    size_t penalized = 0;
    for (const auto& f : inst.generated.features) {
        FeatureVerdict v;
        v.feature = f;
        v.factual = inst.item_features.count(f) ? FactualVerdict::Factual
                                                : FactualVerdict::NonFactual;
        ProxyResult proxy = preference_proxy(profile, f, encoder);
        v.proxy_score = proxy.score;
        if (profile.hist_features.count(f)) {
            v.preference = PreferenceVerdict::AlignedHist;
        } else if (proxy.score >= profile.tau) {
            v.preference = PreferenceVerdict::AlignedProxy;
        } else {
            v.preference = PreferenceVerdict::Inconsistent;
        }
        if (v.factual == FactualVerdict::NonFactual) ++non_factual;
        if (v.preference == PreferenceVerdict::Inconsistent) ++penalized;
        inst.verdicts.push_back(std::move(v));
    }
    const double n = static_cast<double>(inst.generated.size());
    inst.f_ehr = static_cast<double>(non_factual) / n;
    inst.p_ehr = static_cast<double>(penalized) / n;
    return inst;
}

EvalReport evaluate_corpus(const std::vector<EvalInstanceSource>& sources,
                           const ItemCatalog& cat, const UserHistories& histories,
                           const TextEncoder& encoder, const std::set<std::string>& vocabulary,
                           const EvalOptions& options) {
    if (sources.empty()) throw Error("evaluation corpus is empty");

    // One profile per distinct user, built serially for determinism.
    std::map<std::string, PreferenceProfile> profiles;
    for (const auto& s : sources) {
        if (!profiles.count(s.user_id)) {
            profiles.emplace(s.user_id,
                             build_profile(histories.get(s.user_id), encoder, options.tau));
        }
    }

    EvalReport report;
    report.instances.resize(sources.size());
    parallel_for(sources.size(), options.jobs, [&](size_t i) {
        report.instances[i] = evaluate_instance(sources[i], cat, profiles.at(sources[i].user_id),
                                                encoder, vocabulary);
    });

    double f_sum = 0.0;
    double p_sum = 0.0;
    for (const auto& inst : report.instances) {
        if (!inst.scoreable) {
            ++report.unscoreable_count;
            continue;
        }
        ++report.scoreable_count;
        f_sum += inst.f_ehr;
        p_sum += inst.p_ehr;
        for (const auto& v : inst.verdicts) {
            ++report.verdict_histogram[to_string(v.factual)];
            ++report.verdict_histogram[to_string(v.preference)];
        }
    }
    if (report.scoreable_count == 0) {
        throw Error("no scoreable instances: all " + std::to_string(report.unscoreable_count) +
                    " explanations yielded an empty feature set");
    }
    report.corpus_f_ehr = f_sum / static_cast<double>(report.scoreable_count);
    report.corpus_p_ehr = p_sum / static_cast<double>(report.scoreable_count);

    // P-EHR sweep over the tau grid, reusing the cached proxy scores.
    for (double tau : options.tau_grid) {
        double sum = 0.0;
        for (const auto& inst : report.instances) {
            if (!inst.scoreable) continue;
            size_t penalized = 0;
            for (const auto& v : inst.verdicts) {
                const bool in_hist = v.preference == PreferenceVerdict::AlignedHist;
                if (!in_hist && v.proxy_score < tau) ++penalized;
            }
            sum += static_cast<double>(penalized) / static_cast<double>(inst.verdicts.size());
        }
        report.tau_sweep.push_back(
            TauSweepRow{tau, sum / static_cast<double>(report.scoreable_count)});
    }
    return report;
}

} // namespace kgex
