#include <filesystem>
#include <sstream>

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "seshadri/family.hpp"
#include "seshadri/report.hpp"

using namespace seshadri;

namespace {

Rational q(const char* s) { return Rational::parse(s); }

Family d8_family()
{
    Family f;
    f.degree = 8;
    f.members.push_back({"quadric_2_2", quadric(2, 2)});
    f.members.push_back({"f1_anticanonical", f1_anticanonical()});
    return f;
}

} // namespace

TEST(Scan, DegreeEightFamily)
{
    auto rep = scan(d8_family(), q("5/2"));
    EXPECT_EQ(rep.sigma_cap, (std::vector<Rational>{Rational(1), Rational(2)}));
    EXPECT_EQ(rep.sigma_family, SeshadriValue::exact(Rational(2)));
    EXPECT_EQ(rep.sigma_attained_at, (std::pair<std::string, std::string>{"f1_anticanonical", "generic"}));
    EXPECT_TRUE(rep.containment_certified);
    EXPECT_TRUE(rep.contained);
    EXPECT_TRUE(rep.uncertified.empty());
    EXPECT_TRUE(rep.jump_members.empty());

    // Members are reported in param_label order whatever the input order.
    ASSERT_EQ(rep.members.size(), 2u);
    EXPECT_EQ(rep.members[0].param_label, "f1_anticanonical");
    ASSERT_EQ(rep.epsilon_table.size(), 3u);
    EXPECT_EQ(rep.epsilon_table[2].param_label, "quadric_2_2");
}

TEST(Scan, SigmaIsAttainedByARow)
{
    auto rep = scan(d8_family(), q("5/2"));
    bool found = false;
    for (const auto& row : rep.epsilon_table)
        if (row.param_label == rep.sigma_attained_at.first && row.stratum == rep.sigma_attained_at.second)
            found = row.result.value == rep.sigma_family;
    EXPECT_TRUE(found);
}

TEST(Scan, CapIsInsideCandidateSuperset)
{
    for (const char* a : {"1/2", "1", "3/2", "2", "5/2"}) {
        auto rep = scan(d8_family(), q(a));
        for (const auto& x : rep.sigma_cap) {
            EXPECT_LE(x, q(a));
            EXPECT_TRUE(std::binary_search(rep.candidate_superset.begin(), rep.candidate_superset.end(), x))
                << x << " alpha=" << a;
        }
        EXPECT_TRUE(rep.contained);
    }
}

TEST(Scan, ProjectivePlaneBelowItsConstant)
{
    Family f;
    f.degree = 1;
    f.members.push_back({"p2", projective_plane(1)});
    auto rep = scan(f, q("1/2"));
    EXPECT_TRUE(rep.sigma_cap.empty());
    EXPECT_EQ(rep.sigma_family, SeshadriValue::exact(Rational(1)));
}

TEST(Scan, AlphaAboveRootIsFlagged)
{
    auto rep = scan(d8_family(), q("3"));
    EXPECT_FALSE(rep.containment_certified);
    EXPECT_FALSE(rep.contained);
    EXPECT_FALSE(rep.warnings.empty());
    EXPECT_TRUE(rep.candidate_superset.empty());
}

TEST(Scan, Errors)
{
    Family mixed;
    mixed.degree = 8;
    mixed.members.push_back({"p", projective_plane(2)});
    mixed.members.push_back({"q", quadric(2, 2)});
    EXPECT_THROW(scan(mixed, q("1")), Error);

    auto dup = d8_family();
    dup.members.push_back({"quadric_2_2", quadric(2, 2)});
    EXPECT_THROW(scan(dup, q("1")), Error);

    auto unknown = d8_family();
    unknown.member_specialization.push_back({"quadric_2_2", "nowhere"});
    EXPECT_THROW(scan(unknown, q("1")), Error);

    auto cyclic = d8_family();
    cyclic.member_specialization = {{"quadric_2_2", "f1_anticanonical"}, {"f1_anticanonical", "quadric_2_2"}};
    EXPECT_THROW(scan(cyclic, q("1")), Error);

    EXPECT_THROW(scan(d8_family(), q("0")), Error);
    EXPECT_THROW(scan(Family{}, q("1")), Error);
}

TEST(Semicontinuity, F1Internal)
{
    Family f;
    f.degree = 8;
    f.members.push_back({"f1", f1_anticanonical()});
    auto v = semicontinuity_check(f);
    ASSERT_EQ(v.size(), 1u);
    EXPECT_TRUE(v[0].pass);
    EXPECT_EQ(v[0].context, "f1");
}

TEST(Semicontinuity, MemberNegativeControl)
{
    auto f = d8_family();
    // Global epsilon: f1 = 1, quadric(2,2) = 2, so quadric cannot specialize from f1.
    f.member_specialization.push_back({"f1_anticanonical", "quadric_2_2"});
    auto v = semicontinuity_check(f);
    ASSERT_FALSE(v.empty());
    EXPECT_EQ(v[0].scope, "member");
    EXPECT_FALSE(v[0].pass);
    EXPECT_NE(v[0].detail.find("quadric_2_2"), std::string::npos);
    EXPECT_NE(v[0].detail.find("f1_anticanonical"), std::string::npos);

    auto rep = scan(f, q("5/2"));
    EXPECT_TRUE(rep.jump_members.empty());

    // The legal direction: f1 jumps down from the quadric.
    auto g = d8_family();
    g.member_specialization.push_back({"quadric_2_2", "f1_anticanonical"});
    auto rg = scan(g, q("5/2"));
    EXPECT_EQ(rg.jump_members, (std::vector<std::string>{"f1_anticanonical"}));
    EXPECT_TRUE(rg.semicontinuity[0].pass);
}

TEST(Semicontinuity, StratumNegativeControlInFamily)
{
    Family f;
    f.degree = 8;
    f.members.push_back({"bad", fixtures::load(fixtures::inverted_strata())});
    auto v = semicontinuity_check(f);
    ASSERT_EQ(v.size(), 1u);
    EXPECT_FALSE(v[0].pass);
    EXPECT_EQ(v[0].general, "generic");
    EXPECT_EQ(v[0].special, "special");
}

TEST(Semicontinuity, NoSpecializationsNoVerdicts)
{
    Family f;
    f.degree = 4;
    f.members.push_back({"a", projective_plane(2)});
    f.members.push_back({"b", quadric(1, 2)});
    EXPECT_TRUE(semicontinuity_check(f).empty());
}

TEST(Documents, ShippedFamilyLoads)
{
    const std::filesystem::path data(SESHADRI_DATA_DIR);
    auto f = load_family(read_file(data / "family_d8.json"), data);
    EXPECT_EQ(f.degree, 8);
    ASSERT_EQ(f.members.size(), 2u);
    auto rep = scan(f, q("5/2"));
    EXPECT_EQ(rep.sigma_cap, (std::vector<Rational>{Rational(1), Rational(2)}));
}

TEST(Documents, InlineModelsAndErrors)
{
    nlohmann::ordered_json j{{"degree", 1},
                             {"members", {{{"param_label", "p"}, {"model", fixtures::doc(projective_plane(1))}}}},
                             {"member_specialization", nlohmann::ordered_json::array()}};
    auto f = load_family(j.dump());
    EXPECT_EQ(f.members.at(0).model.name, "projective_plane(1)");

    j["members"][0]["model"] = "builtin:quadric(0,1)";
    EXPECT_THROW(load_family(j.dump()), Error);
    j["members"][0]["model"] = "no_such_file.json";
    EXPECT_THROW(load_family(j.dump()), Error);
    EXPECT_THROW(load_family("[]"), Error);
}

TEST(Report, Deterministic)
{
    auto render = [] {
        auto rep = scan(d8_family(), q("5/2"));
        std::ostringstream csv;
        write_csv(csv, rep);
        auto j = report_envelope("scan");
        j["result"] = to_json(rep);
        return j.dump(2) + csv.str();
    };
    EXPECT_EQ(render(), render());
}

TEST(Report, CsvRows)
{
    std::ostringstream csv;
    write_csv(csv, scan(d8_family(), q("5/2")));
    EXPECT_EQ(csv.str(), "param_label,stratum,epsilon,certification,witness\n"
                         "f1_anticanonical,generic,2,ExactCertified,H-E\n"
                         "f1_anticanonical,on_E,1,ExactCertified,E\n"
                         "quadric_2_2,generic,2,ExactCertified,ruling_f1\n");
}
