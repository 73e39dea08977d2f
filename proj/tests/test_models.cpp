#include <filesystem>

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "seshadri/family.hpp"
#include "seshadri/models.hpp"

using namespace seshadri;

namespace {

std::string load_error(const nlohmann::ordered_json& j)
{
    try {
        fixtures::load(j);
    } catch (const Error& e) {
        return e.what();
    }
    return {};
}

} // namespace

TEST(Builtin, Degrees)
{
    EXPECT_EQ(projective_plane(2).degree(), 4);
    EXPECT_EQ(quadric(2, 2).degree(), 8);
    EXPECT_EQ(quadric(1, 2).degree(), 4);
    EXPECT_EQ(f1_anticanonical().degree(), 8);
    auto q = quadric(2, 2);
    EXPECT_EQ(pair(q.polarization, q.polarization), 8);
}

TEST(Builtin, InvalidParameters)
{
    EXPECT_THROW(projective_plane(0), Error);
    EXPECT_THROW(projective_plane(-1), Error);
    EXPECT_THROW(quadric(0, 1), Error);
    EXPECT_THROW(builtin_from_ref("projective_plane(0)"), Error);
    EXPECT_THROW(builtin_from_ref("cubic(3)"), Error);
    EXPECT_THROW(builtin_from_ref("quadric(1)"), Error);
    EXPECT_THROW(builtin_from_ref("quadric(1,2"), Error);
    EXPECT_EQ(builtin_from_ref("quadric(2,2)").degree(), 8);
    EXPECT_EQ(builtin_from_ref("f1_anticanonical").strata.size(), 2u);
}

TEST(Builtin, EveryModelValidates)
{
    for (const auto& m : builtin_suite())
        EXPECT_NO_THROW(validate(m)) << m.name;
}

TEST(RoundTrip, ByteIdentical)
{
    for (const auto& m : builtin_suite()) {
        auto text = dump_model(m);
        auto back = load_model(text);
        EXPECT_EQ(dump_model(back), text) << m.name;
        EXPECT_EQ(back.name, m.name);
        EXPECT_EQ(*back.lattice, *m.lattice);
        EXPECT_EQ(back.polarization, m.polarization);
    }
}

TEST(RoundTrip, ShippedDataMatchesBuiltins)
{
    const std::filesystem::path data(SESHADRI_DATA_DIR);
    EXPECT_EQ(read_file(data / "f1_anticanonical.json"), dump_model(f1_anticanonical()));
    EXPECT_EQ(read_file(data / "quadric_2_2.json"), dump_model(quadric(2, 2)));
    EXPECT_EQ(read_file(data / "projective_plane_1.json"), dump_model(projective_plane(1)));
}

TEST(RoundTrip, IncompleteGeneratorsKeepTheirFlag)
{
    auto j = fixtures::doc(projective_plane(1));
    auto gens = j["blowup_gens"]["generic"];
    j["blowup_gens"]["generic"] = {{"complete", false}, {"generators", gens}};
    auto m = fixtures::load(j);
    EXPECT_FALSE(m.blowup_generators("generic")->complete());
    EXPECT_EQ(dump_model(load_model(dump_model(m))), dump_model(m));
}

TEST(Load, DegreeMismatch)
{
    auto j = fixtures::doc(f1_anticanonical());
    j["rr"]["d"] = 9;
    EXPECT_NE(load_error(j).find("degree mismatch"), std::string::npos);
}

TEST(Load, TwoDenseStrata)
{
    auto j = fixtures::doc(f1_anticanonical());
    j["strata"][1]["closure_dim"] = 2;
    j["strata"][1]["specializes_from"] = nlohmann::ordered_json::array();
    EXPECT_NE(load_error(j).find("dense stratum"), std::string::npos);
}

TEST(Load, MissingDenseStratum)
{
    auto j = fixtures::doc(projective_plane(1));
    j["strata"][0]["closure_dim"] = 1;
    EXPECT_NE(load_error(j).find("missing dense stratum"), std::string::npos);
}

TEST(Load, CyclicSpecialization)
{
    auto j = fixtures::inverted_strata();
    auto third = j["strata"][1];
    third["label"] = "other";
    third["specializes_from"] = {"special"};
    j["strata"].push_back(third);
    j["strata"][1]["specializes_from"] = {"other"};
    j["strata"][1]["closure_dim"] = 0;
    j["strata"][2]["closure_dim"] = 0;
    // Any cycle contains an edge whose general side is not of larger dimension.
    EXPECT_NE(load_error(j).find("closure_dim"), std::string::npos);

    auto edges = std::map<std::string, std::vector<std::string>>{{"a", {"b"}}, {"b", {"a"}}};
    EXPECT_THROW(detail::require_acyclic(edges, "specialization"), Error);
}

TEST(Load, GramAsymmetry)
{
    auto j = fixtures::doc(quadric(1, 1));
    j["gram"][0][1] = 2;
    EXPECT_NE(load_error(j).find("gram asymmetry"), std::string::npos);
}

TEST(Load, SchemaViolationsNameTheField)
{
    auto j = fixtures::doc(f1_anticanonical());
    j["strata"][0]["candidates"][0]["t"] = "two";
    EXPECT_NE(load_error(j).find("$.strata[0].candidates[0].t"), std::string::npos);

    auto k = fixtures::doc(f1_anticanonical());
    k.erase("rr");
    EXPECT_NE(load_error(k).find("missing field \"rr\""), std::string::npos);

    auto v = fixtures::doc(f1_anticanonical());
    v["schema_version"] = 2;
    EXPECT_NE(load_error(v).find("schema_version"), std::string::npos);

    auto r = fixtures::doc(f1_anticanonical());
    r["strata"][0]["oracle_complete_below"] = "2.0";
    EXPECT_NE(load_error(r).find("oracle_complete_below"), std::string::npos);

    EXPECT_THROW(load_model("{not json"), Error);
}

TEST(Load, CandidateDegreeMustMatchClass)
{
    auto j = fixtures::doc(f1_anticanonical());
    j["strata"][0]["candidates"][0]["t"] = 7;
    EXPECT_NE(load_error(j).find("degree mismatch"), std::string::npos);
}

TEST(Load, CandidateBeyondDegreeCapIsRejected)
{
    // K = 2 < sqrt(8) caps t at B(2) for the stratum.
    auto m = f1_anticanonical();
    auto cap = minimal_M(m.rr, Rational(2)).B;
    auto j = fixtures::doc(m);
    j["strata"][0]["candidates"].push_back({{"label", "huge"}, {"class", nullptr}, {"t", cap + 1}, {"m", 1}});
    EXPECT_NE(load_error(j).find("degree bound"), std::string::npos);
}

TEST(Load, PolarizationMustPassPositivityGate)
{
    auto j = fixtures::doc(f1_anticanonical());
    // A generator whose pushforward is E - H meets L negatively.
    j["blowup_gens"]["generic"].push_back({{"label", "bad"}, {"class", {-1, 1, 0}}});
    EXPECT_NE(load_error(j).find("positivity"), std::string::npos);
}

TEST(Load, GeneratorsForUnknownStratum)
{
    auto j = fixtures::doc(projective_plane(1));
    j["blowup_gens"]["elsewhere"] = j["blowup_gens"]["generic"];
    EXPECT_NE(load_error(j).find("unknown stratum"), std::string::npos);
}

// chi(L^n) for O(e) on P^2 against the binomial count of degree-ne monomials.
TEST(RiemannRoch, ProjectivePlaneMatchesBinomial)
{
    for (std::int64_t e = 1; e <= 4; ++e) {
        const auto rr = projective_plane(e).rr;
        for (std::int64_t n = 1; n <= 10; ++n) {
            const std::int64_t k = n * e;
            const Rational chi = Rational(rr.d * n * n) / Rational(2) + Rational(rr.c * n) / Rational(2) +
                                 Rational(rr.c_prime);
            EXPECT_EQ(chi, Rational((k + 1) * (k + 2) / 2)) << "e=" << e << " n=" << n;
        }
    }
}

// chi(O(na, nb)) on P^1 x P^1 is (na + 1)(nb + 1).
TEST(RiemannRoch, QuadricMatchesProductCount)
{
    for (std::int64_t a = 1; a <= 3; ++a)
        for (std::int64_t b = a; b <= 3; ++b) {
            const auto rr = quadric(a, b).rr;
            for (std::int64_t n = 1; n <= 10; ++n) {
                const Rational chi = Rational(rr.d * n * n) / Rational(2) + Rational(rr.c * n) / Rational(2) +
                                     Rational(rr.c_prime);
                EXPECT_EQ(chi, Rational((n * a + 1) * (n * b + 1)));
            }
        }
}
