#include <gtest/gtest.h>

#include "qbasim/classical.hpp"
#include "qbasim/errors.hpp"

using namespace qbasim;
using namespace qbasim::classical;
using qba::Decision;

namespace {

ClassicalScenario disloyal_commander() {
    ClassicalScenario s;
    s.commander_loyal = false;
    return s;
}

}  // namespace

TEST(Oral, FourPartiesLoyalCommanderOutvotesFaultyEmery) {
    const auto r = run_classical_oral(4, ClassicalScenario{});
    EXPECT_EQ(r.faulty, PartyId::Emery);
    for (PartyId lt : {PartyId::Bob, PartyId::Charlie}) {
        EXPECT_EQ(r.verdict.lists.at(lt), (std::vector<std::string>{"attack", "attack", "retreat"}));
        EXPECT_EQ(r.verdict.outputs.at(lt), Decision::of("attack"));
    }
    EXPECT_TRUE(r.verdict.ic1);
    EXPECT_EQ(r.verdict.ic2, true);
    EXPECT_TRUE(r.satisfies_one_third_bound);
}

TEST(Oral, FourPartiesDisloyalCommanderStillConsistent) {
    const auto r = run_classical_oral(4, disloyal_commander());
    for (PartyId lt : {PartyId::Bob, PartyId::Charlie, PartyId::Emery}) {
        EXPECT_EQ(r.verdict.outputs.at(lt), Decision::of("attack"));
    }
    EXPECT_EQ(r.verdict.lists.at(PartyId::Emery), (std::vector<std::string>{"retreat", "attack", "attack"}));
    EXPECT_TRUE(r.verdict.ic1);
    EXPECT_FALSE(r.verdict.ic2.has_value());
}

TEST(Oral, ThreePartiesBobCannotTellTheScenariosApart) {
    const auto a = run_classical_oral(3, ClassicalScenario{});
    const auto b = run_classical_oral(3, disloyal_commander());
    EXPECT_EQ(a.faulty, PartyId::Charlie);
    EXPECT_EQ(b.faulty, PartyId::Alice);
    EXPECT_EQ(a.views.at(PartyId::Bob).serialize(), b.views.at(PartyId::Bob).serialize());
    EXPECT_EQ(a.verdict.lists.at(PartyId::Bob), (std::vector<std::string>{"attack", "retreat"}));
    EXPECT_EQ(a.verdict.outputs.at(PartyId::Bob), Decision::undecidable());
    EXPECT_EQ(b.verdict.outputs.at(PartyId::Bob), Decision::undecidable());
    EXPECT_FALSE(a.verdict.ic1);
    EXPECT_FALSE(b.verdict.ic1);
    EXPECT_FALSE(a.satisfies_one_third_bound);
}

TEST(Oral, ThreePartiesFaultyBobStallsCharlie) {
    ClassicalScenario s;
    s.faulty_lieutenant = PartyId::Bob;
    const auto r = run_classical_oral(3, s);
    // Charlie hears two different orders and cannot tell who lied.
    EXPECT_EQ(r.verdict.outputs.at(PartyId::Charlie), Decision::undecidable());
}

TEST(Oral, RejectsBadConfigurations) {
    EXPECT_THROW(run_classical_oral(5, ClassicalScenario{}), DomainError);
    ClassicalScenario s;
    s.faulty_lieutenant = PartyId::Emery;
    EXPECT_THROW(run_classical_oral(3, s), DomainError);
    s = disloyal_commander();
    s.faulty_lieutenant = PartyId::Bob;
    EXPECT_THROW(run_classical_oral(4, s), DomainError);
    s = ClassicalScenario{};
    s.m2 = s.m1;
    EXPECT_THROW(run_classical_oral(4, s), DomainError);
}

TEST(Oral, TranscriptIsCausal) {
    const auto r = run_classical_oral(4, ClassicalScenario{});
    EXPECT_TRUE(qba::is_causal(r.transcript));
    EXPECT_EQ(r.transcript.size(), 3U + 6U);
}

TEST(Signature, LoyalCommanderFaultyCharlie) {
    const auto r = run_classical_signature(ClassicalScenario{});
    EXPECT_EQ(r.faulty, PartyId::Charlie);
    EXPECT_EQ(r.verdict.outputs.at(PartyId::Bob), Decision::of("attack"));
    EXPECT_EQ(r.verdict.lists.at(PartyId::Bob), (std::vector<std::string>{"attack"}));
    EXPECT_EQ(r.verdict.lists.at(PartyId::Charlie), (std::vector<std::string>{"attack", "attack"}));
    EXPECT_TRUE(r.verdict.ic1);
    EXPECT_EQ(r.verdict.ic2, true);
    bool rejected = false;
    for (const auto& e : r.transcript.entries()) {
        if (const auto* a = std::get_if<qba::AuthorityNotice>(&e.payload)) {
            EXPECT_EQ(e.sender, PartyId::Authority);
            if (!a->result) rejected = true;
        }
    }
    EXPECT_TRUE(rejected);
}

TEST(Signature, DisloyalCommanderGivesSharedDelta) {
    const auto r = run_classical_signature(disloyal_commander());
    EXPECT_EQ(r.verdict.lists.at(PartyId::Bob), (std::vector<std::string>{"attack", "retreat"}));
    EXPECT_EQ(r.verdict.lists.at(PartyId::Charlie), (std::vector<std::string>{"retreat", "attack"}));
    EXPECT_EQ(r.verdict.outputs.at(PartyId::Bob), Decision::of("attack"));
    EXPECT_EQ(r.verdict.outputs.at(PartyId::Charlie), Decision::of("attack"));
    EXPECT_TRUE(r.verdict.ic1);

    auto s = disloyal_commander();
    s.delta = "hold";
    const auto fixed = run_classical_signature(s);
    EXPECT_EQ(fixed.verdict.outputs.at(PartyId::Bob), Decision::of("hold"));
    EXPECT_EQ(fixed.verdict.outputs.at(PartyId::Charlie), Decision::of("hold"));
}

TEST(Signature, AuthorityCountsAsFourthParty) {
    const auto r = run_classical_signature(ClassicalScenario{});
    EXPECT_EQ(r.effective_party_count, 4);
    EXPECT_EQ(r.faulty_count, 1);
    EXPECT_TRUE(r.satisfies_one_third_bound);
    const auto j = to_json(r);
    bool tagged = false;
    for (const auto& e : j["transcript"]) {
        if (e["payload"]["type"] == "authority") tagged = e["payload"]["trusted_third_party"].get<bool>();
    }
    EXPECT_TRUE(tagged);
    EXPECT_TRUE(qba::is_causal(r.transcript));
}

TEST(Signature, DeterministicPerSeed) {
    ClassicalScenario s;
    EXPECT_EQ(qba::transcript_digest(run_classical_signature(s).transcript),
              qba::transcript_digest(run_classical_signature(s).transcript));
    ClassicalScenario t;
    t.seed = 2;
    EXPECT_NE(qba::transcript_digest(run_classical_signature(s).transcript),
              qba::transcript_digest(run_classical_signature(t).transcript));
}
