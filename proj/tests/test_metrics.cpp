#include <doctest.h>

#include <random>
#include <sstream>

#include "kgex/encoder.hpp"
#include "kgex/error.hpp"
#include "kgex/metrics.hpp"

using namespace kgex;

namespace {

struct MetricsFixture {
    KnowledgeGraph graph;
    ItemCatalog catalog;
    UserHistories histories;
    HashTextEncoder encoder{42, 64};
    std::set<std::string> vocabulary;

    MetricsFixture() {
        std::istringstream in("b1\tr\tx\nb2\tr\tx\n");
        graph = load_graph(in);
        catalog.add(ItemRecord{"i1", *graph.find_entity("b1"), "Item One",
                               {"alpha", "beta", "gamma"}});
        catalog.add(ItemRecord{"i2", *graph.find_entity("b2"), "Item Two", {"alpha", "beta"}});

        UserHistory h;
        h.user_id = "u";
        h.items.push_back(HistoryItem{
            "i1", 1, {FeatureQuad{"alpha", 1, "", 0.9}, FeatureQuad{"beta", 1, "", 0.8}}});
        histories.add(std::move(h));

        vocabulary = {"alpha", "beta", "gamma", "delta", "epsilon zeta", "epsilon"};
    }

    PreferenceProfile profile(double tau = 0.4) const {
        return build_profile(histories.get("u"), encoder, tau);
    }
};

} // namespace

TEST_CASE("f_ehr set arithmetic") {
    CHECK(f_ehr_rate({"a", "b"}, {"a", "b", "c"}) == doctest::Approx(0.0));
    CHECK(f_ehr_rate({"a", "b", "c"}, {"a", "b"}) == doctest::Approx(1.0 / 3.0));
    CHECK(f_ehr_rate({"x", "y"}, {"a", "b"}) == doctest::Approx(1.0));
    CHECK_THROWS_AS(f_ehr_rate({}, {"a"}), Error);
}

TEST_CASE("p_ehr counts features failing both validity clauses") {
    MetricsFixture f;
    PreferenceProfile prof = f.profile();
    // alpha, beta historical; delta unrelated.
    CHECK(p_ehr_rate({"alpha", "beta"}, prof, f.encoder) == doctest::Approx(0.0));
    double rate = p_ehr_rate({"alpha", "delta"}, prof, f.encoder);
    CHECK(rate == doctest::Approx(0.5));
    PreferenceProfile empty = prof;
    empty.hist_features.clear();
    empty.intent = Vec(64, 0.0);
    CHECK(p_ehr_rate({"delta", "gamma"}, empty, f.encoder) == doctest::Approx(1.0));
    CHECK_THROWS_AS(p_ehr_rate({}, prof, f.encoder), Error);
}

TEST_CASE("evaluate_instance labels each feature") {
    MetricsFixture f;
    EvalInstanceSource src{"u", "i1", "alpha with delta energy", std::nullopt};
    EvalInstance inst = evaluate_instance(src, f.catalog, f.profile(), f.encoder, f.vocabulary);
    REQUIRE(inst.scoreable);
    REQUIRE(inst.verdicts.size() == 2);
    CHECK(inst.generated.features == std::set<std::string>{"alpha", "delta"});
    for (const auto& v : inst.verdicts) {
        if (v.feature == "alpha") {
            CHECK(v.factual == FactualVerdict::Factual);
            CHECK(v.preference == PreferenceVerdict::AlignedHist);
        } else {
            CHECK(v.factual == FactualVerdict::NonFactual);
            CHECK(v.preference == PreferenceVerdict::Inconsistent);
        }
    }
    CHECK(inst.f_ehr == doctest::Approx(0.5));
    CHECK(inst.p_ehr == doctest::Approx(0.5));
}

TEST_CASE("provided features bypass the lexicon and are normalized") {
    MetricsFixture f;
    EvalInstanceSource src{"u", "i1", "ignored text",
                           std::vector<std::string>{"  ALPHA ", "delta"}};
    EvalInstance inst = evaluate_instance(src, f.catalog, f.profile(), f.encoder, f.vocabulary);
    CHECK(inst.generated.provenance == FeatureProvenance::Provided);
    CHECK(inst.generated.features == std::set<std::string>{"alpha", "delta"});
}

TEST_CASE("empty feature set is unscoreable, not zero") {
    MetricsFixture f;
    EvalInstanceSource src{"u", "i1", "nothing matches here", std::nullopt};
    EvalInstance inst = evaluate_instance(src, f.catalog, f.profile(), f.encoder, f.vocabulary);
    CHECK(!inst.scoreable);
    CHECK(inst.verdicts.empty());
}

TEST_CASE("corpus means run over scoreable instances only") {
    MetricsFixture f;
    std::vector<EvalInstanceSource> sources = {
        {"u", "i1", "alpha beta", std::nullopt},            // P-EHR 0
        {"u", "i1", "delta", std::nullopt},                 // P-EHR 1
        {"u", "i1", "no features at all", std::nullopt},    // unscoreable
    };
    EvalOptions opts;
    EvalReport report = evaluate_corpus(sources, f.catalog, f.histories, f.encoder,
                                        f.vocabulary, opts);
    CHECK(report.scoreable_count == 2);
    CHECK(report.unscoreable_count == 1);
    CHECK(report.corpus_p_ehr == doctest::Approx(0.5));

    std::vector<EvalInstanceSource> single = {{"u", "i2", "alpha", std::nullopt}};
    EvalReport one = evaluate_corpus(single, f.catalog, f.histories, f.encoder,
                                     f.vocabulary, opts);
    CHECK(one.corpus_f_ehr == one.instances[0].f_ehr);
    CHECK(one.corpus_p_ehr == one.instances[0].p_ehr);
}

TEST_CASE("a corpus with zero scoreable instances is an error naming the count") {
    MetricsFixture f;
    std::vector<EvalInstanceSource> sources = {
        {"u", "i1", "nothing", std::nullopt},
        {"u", "i1", "still nothing", std::nullopt},
    };
    CHECK_THROWS_WITH_AS(
        evaluate_corpus(sources, f.catalog, f.histories, f.encoder, f.vocabulary, {}),
        doctest::Contains("2"), Error);
}

TEST_CASE("tau sweep is monotone: relaxing tau never raises P-EHR") {
    MetricsFixture f;
    std::vector<EvalInstanceSource> sources = {
        {"u", "i1", "alpha delta gamma", std::nullopt},
        {"u", "i2", "beta epsilon", std::nullopt},
    };
    EvalOptions opts;
    for (int i = 0; i <= 10; ++i) opts.tau_grid.push_back(0.1 * i);
    EvalReport report = evaluate_corpus(sources, f.catalog, f.histories, f.encoder,
                                        f.vocabulary, opts);
    REQUIRE(report.tau_sweep.size() == 11);
    for (size_t i = 1; i < report.tau_sweep.size(); ++i) {
        CHECK(report.tau_sweep[i - 1].p_ehr <= report.tau_sweep[i].p_ehr + 1e-12);
    }
}

TEST_CASE("adding features to the historical set never raises P-EHR") {
    MetricsFixture f;
    std::mt19937_64 rng(17);
    const std::vector<std::string> pool = {"alpha", "beta",  "gamma",  "delta",
                                           "epsilon", "zeta", "theta", "kappa"};
    for (int trial = 0; trial < 30; ++trial) {
        std::set<std::string> generated;
        for (size_t i = 0; i < 1 + rng() % 5; ++i) generated.insert(pool[rng() % pool.size()]);
        PreferenceProfile prof = f.profile();
        double prev = p_ehr_rate(generated, prof, f.encoder);
        for (int add = 0; add < 4; ++add) {
            prof.hist_features.insert(pool[rng() % pool.size()]);
            double next = p_ehr_rate(generated, prof, f.encoder);
            CHECK(next <= prev + 1e-12);
            prev = next;
        }
    }
}

TEST_CASE("F-EHR ignores the profile; P-EHR ignores the item attributes") {
    MetricsFixture f;
    EvalInstanceSource src{"u", "i1", "alpha delta", std::nullopt};
    PreferenceProfile prof_a = f.profile();
    PreferenceProfile prof_b = f.profile();
    prof_b.hist_features.insert("delta");
    EvalInstance a = evaluate_instance(src, f.catalog, prof_a, f.encoder, f.vocabulary);
    EvalInstance b = evaluate_instance(src, f.catalog, prof_b, f.encoder, f.vocabulary);
    CHECK(a.f_ehr == b.f_ehr);          // profile change has no factual effect
    CHECK(a.p_ehr > b.p_ehr);           // but flips the preference verdict

    EvalInstanceSource other{"u", "i2", "alpha delta", std::nullopt};
    EvalInstance c = evaluate_instance(other, f.catalog, prof_a, f.encoder, f.vocabulary);
    CHECK(a.p_ehr == c.p_ehr);          // item swap has no preference effect
}
