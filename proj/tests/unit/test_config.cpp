#include "fixtures.hpp"

#include "seirs/config.hpp"
#include "seirs/errors.hpp"
#include "seirs/format.hpp"
#include "seirs/report.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>
#include <sstream>

using namespace seirs;

namespace {

const char* base_text = R"(# Table 1, low contact rate
params.B = 8.476678e-06
params.beta = 0.02146383   # trailing comment
params.mu = 8.476678e-06
params.mu_v = 42.85714
params.d = 0.0001761252
params.alpha = 0.08571429
incidence.family = holling2
incidence.a1 = 0.05
T1.kind = point
T1.value = 0.105
delays.T2.kind = point
delays.T2.value = 0.175
delays.T3.kind = point
delays.T3.value = 2.129167
)";

} // namespace

TEST_CASE("parse a flat configuration")
{
    const KeyValueConfig cfg = KeyValueConfig::parse(base_text);
    CHECK(cfg.number("params.beta") == 0.02146383);
    CHECK(cfg.number("beta") == 0.02146383);
    CHECK(cfg.text("delays.T1.kind") == "point");
    CHECK(cfg.find("T1.value")->line == 11);

    const ModelConfig m = load_model(cfg);
    CHECK(m.params.mu_v == 42.85714);
    CHECK(m.delays.t1.is_point_mass());
    CHECK(m.delays.t3.value() == 2.129167);
    CHECK(m.incidence.family() == IncidenceFamily::Holling2);
    CHECK(m.sim.dt == 1e-3);
    CHECK(m.sim.initial.S == doctest::Approx(10.0 / 23.0));
    CHECK_FALSE(m.time_scale);
}

TEST_CASE("later keys and overrides win")
{
    KeyValueConfig cfg = KeyValueConfig::parse(std::string(base_text) + "params.beta = 2\n");
    CHECK(cfg.number("params.beta") == 2.0);
    cfg.set_assignment("beta=7.941616");
    CHECK(load_model(cfg).params.beta == 7.941616);
    CHECK(cfg.find("beta")->line == 0);
}

TEST_CASE("configuration errors carry the key and line")
{
    CHECK_THROWS_WITH_AS(KeyValueConfig::parse("params.B = 1\nnonsense\n"),
                         doctest::Contains("line 2"), ConfigError);
    CHECK_THROWS_WITH_AS(KeyValueConfig::parse("params.B = 1\nparams.gamma = 2\n"),
                         doctest::Contains("params.gamma"), ConfigError);
    CHECK_THROWS_WITH_AS(KeyValueConfig::parse("params.B =\n"), doctest::Contains("line 1"),
                         ConfigError);

    KeyValueConfig missing = KeyValueConfig::parse(base_text);
    KeyValueConfig rebuilt;
    for (const auto& [k, e] : missing.entries()) {
        if (k != "params.alpha") rebuilt.set(k, e.value, e.line);
    }
    CHECK_THROWS_WITH_AS(load_model(rebuilt), doctest::Contains("params.alpha"), ConfigError);

    KeyValueConfig bad = KeyValueConfig::parse(std::string(base_text) + "params.mu = fast\n");
    CHECK_THROWS_WITH_AS(load_model(bad), doctest::Contains("line 16"), ConfigError);

    KeyValueConfig neg = KeyValueConfig::parse(std::string(base_text) + "params.mu = -1\n");
    CHECK_THROWS_WITH_AS(load_model(neg), doctest::Contains("params.mu"), ConfigError);

    KeyValueConfig kind = KeyValueConfig::parse(std::string(base_text) + "T1.kind = spline\n");
    CHECK_THROWS_WITH_AS(load_model(kind), doctest::Contains("delays.T1.kind"), ConfigError);

    KeyValueConfig mixed = KeyValueConfig::parse(std::string(base_text) + "dimensional.V0 = 10\n");
    CHECK_THROWS_AS(load_model(mixed), ConfigError);
}

TEST_CASE("density delays from configuration")
{
    const KeyValueConfig cfg = KeyValueConfig::parse(std::string(base_text) +
                                                     "T3.kind = density\n"
                                                     "T3.density = gamma\n"
                                                     "T3.shape = 4\n"
                                                     "T3.scale = 0.5\n"
                                                     "T3.nodes = 129\n");
    const ModelConfig m = load_model(cfg);
    CHECK_FALSE(m.delays.t3.is_point_mass());
    CHECK(m.delays.t3.node_count() == 129);
    CHECK(m.delays.t3.mean() == doctest::Approx(2.0).epsilon(1e-3));

    const KeyValueConfig bad = KeyValueConfig::parse(std::string(base_text) +
                                                     "T3.kind = density\nT3.density = uniform\n");
    CHECK_THROWS_WITH_AS(load_model(bad), doctest::Contains("delays.T3"), ConfigError);
}

TEST_CASE("dimensional rates are nondimensionalised")
{
    const double muhat = 1.0 / 21900.0;
    const double k = muhat / 8.476678e-06;
    std::ostringstream text;
    text << "dimensional.Bhat = " << format_number(65000 * muhat) << "\n"
         << "dimensional.muhat = " << format_number(muhat) << "\n"
         << "dimensional.Lambda = " << format_number(k / 65000) << "\n"
         << "dimensional.alphahat = " << format_number(0.08571429 * k) << "\n"
         << "dimensional.dhat = " << format_number(0.0001761252 * k) << "\n"
         << "dimensional.muvhat = " << format_number(42.85714 * k) << "\n"
         << "dimensional.V0 = 1e6\n"
         << "dimensional.betahat = " << format_number(7.941616 * 42.85714 * k / 1e6) << "\n"
         << "incidence.family = saturating\nincidence.theta = 2\n"
         << "T1.kind = point\nT1.value = " << format_number(0.105 / k) << "\n"
         << "T2.kind = point\nT2.value = " << format_number(0.175 / k) << "\n"
         << "T3.kind = point\nT3.value = " << format_number(2.129167 / k) << "\n";
    const ModelConfig m = load_model(KeyValueConfig::parse(text.str()));
    REQUIRE(m.time_scale);
    CHECK(*m.time_scale == doctest::Approx(k).epsilon(1e-12));
    CHECK(m.params.beta == doctest::Approx(7.941616).epsilon(1e-12));
    CHECK(m.params.B / m.params.mu == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(m.delays.t1.value() == doctest::Approx(0.105).epsilon(1e-12));
}

TEST_CASE("serialised models load back unchanged")
{
    fixtures::Gen gen(55);
    for (int trial = 0; trial < 50; ++trial) {
        ModelConfig m;
        m.params = gen.params();
        m.incidence = trial % 2 ? IncidenceModel::saturating(gen.uniform(0.1, 3))
                                : IncidenceModel::holling2(gen.uniform(0.01, 1));
        DensityShape tri;
        tri.family = DensityFamily::Triangular;
        tri.mode = 0.1;
        DensityShape ex;
        ex.family = DensityFamily::Exponential;
        ex.rate = gen.uniform(1.0, 5.0);
        m.delays = {DelaySpec::point_mass(gen.uniform(0, 0.3)),
                    DelaySpec::from_shape(tri, 0.0, 0.3, gen.integer(3, 100)),
                    DelaySpec::from_shape(ex, 0.5, std::numeric_limits<double>::infinity())};
        m.sim.dt = gen.log_uniform(1e-4, 1e-1);
        m.sim.record_stride = gen.integer(1, 50);
        m.permanence.q = 0.25;

        const std::string text = serialize_model(m);
        const ModelConfig back = load_model(KeyValueConfig::parse(text));
        REQUIRE(back.params.beta == m.params.beta);
        REQUIRE(back.params.mu_v == m.params.mu_v);
        REQUIRE(back.incidence.parameter() == m.incidence.parameter());
        REQUIRE(back.sim.dt == m.sim.dt);
        REQUIRE(back.sim.record_stride == m.sim.record_stride);
        REQUIRE(back.permanence.q == m.permanence.q);
        for (auto [a, b] : {std::pair{&m.delays.t1, &back.delays.t1},
                            std::pair{&m.delays.t2, &back.delays.t2},
                            std::pair{&m.delays.t3, &back.delays.t3}}) {
            REQUIRE(a->node_count() == b->node_count());
            for (int i = 0; i < a->node_count(); ++i) {
                REQUIRE(a->nodes()[i] == b->nodes()[i]);
                REQUIRE(a->weights()[i] == doctest::Approx(b->weights()[i]).epsilon(1e-13));
            }
        }
        REQUIRE(serialize_model(back) == text);
    }
}

TEST_CASE("numbers print as shortest round-trip decimals")
{
    fixtures::Gen gen(1);
    for (int trial = 0; trial < 1000; ++trial) {
        const double x = gen.log_uniform(1e-300, 1e300) * (trial % 2 ? 1 : -1);
        REQUIRE(parse_number(format_number(x)) == x);
    }
    CHECK(format_number(0.1) == "0.1");
    CHECK(format_number(0.2498732) == "0.2498732");
    CHECK(format_number(std::numeric_limits<double>::infinity()) == "inf");
    CHECK(parse_number("1e-3") == 1e-3);
    CHECK_FALSE(parse_number("1e-3x"));
    CHECK_FALSE(parse_number(""));
}

TEST_CASE("report key-value blocks")
{
    const auto p = fixtures::table1(fixtures::beta_extinction);
    const AnalysisReport r = analyze(p, fixtures::table1_incidence(), fixtures::table1_delays());
    const KeyValues kv = analysis_key_values(r);
    auto find = [&](const std::string& k) {
        for (const auto& [key, v] : kv) {
            if (key == k) return v;
        }
        return std::string("<missing>");
    };
    CHECK(find("regime") == "ExtinctionByR0");
    CHECK(find("endemic") == "absent");
    CHECK(find("permanence") == "absent");
    CHECK(std::abs(*parse_number(find("lambda")) - 0.06443506) < 1e-6 * 0.06443506);
    CHECK(*parse_number(find("r0_star")) == r.r0_star);

    std::ostringstream out;
    write_key_values(out, kv);
    CHECK(out.str().find("r0_star = 0.2498731") != std::string::npos);
    CHECK(analysis_text(r).find("ExtinctionByR0") != std::string::npos);
}

TEST_CASE("sweep CSV quotes errors")
{
    std::vector<SweepRow> rows(2);
    rows[0].index = 0;
    rows[0].value = 1.0;
    rows[0].error = "params.mu: bad, \"really\"";
    rows[1].index = 1;
    rows[1].value = 2.0;
    rows[1].report = analyze(fixtures::table1(2.0), fixtures::table1_incidence(),
                             fixtures::table1_delays());
    std::ostringstream out;
    write_sweep_csv(out, "params.beta", rows);
    const std::string s = out.str();
    CHECK(s.rfind("index,key,value,r0_star,espr,regime,lambda,I_star,error\n", 0) == 0);
    CHECK(s.find("0,params.beta,1,,,,,,\"params.mu: bad, \"\"really\"\"\"\n") != std::string::npos);
    CHECK(s.find("1,params.beta,2,") != std::string::npos);
}
