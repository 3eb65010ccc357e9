#include <doctest.h>

#include <set>

#include "alcor/miner.hpp"
#include "alcor/synth.hpp"
#include "support.hpp"

using namespace alcor;
using namespace testsupport;

namespace {

const AlarmType a = bts_type(0);
const AlarmType b = bts_type(1);

// a@1, b@2, a@3, b@4 — the canonical four-event fixture
AlarmQueue four_event_queue() {
    return queue_of({{a, 1}, {b, 2}, {a, 3}, {b, 4}});
}

} // namespace

TEST_CASE("count_occurrences on pinned instances") {
    SUBCASE("single-element sequences count containing tuples") {
        auto q = queue_of({{a, 1}, {a, 5}, {a, 9}, {b, 5}});
        CHECK(count_occurrences({a}, q, WindowSpec(1)) == 3);
        CHECK(count_occurrences({a}, q, WindowSpec(1000)) == 3);
    }
    SUBCASE("two matches in the four-event queue") {
        CHECK(count_occurrences({a, b}, four_event_queue(), WindowSpec(2)) == 2);
    }
    SUBCASE("b then a has one occurrence") {
        CHECK(count_occurrences({b, a}, four_event_queue(), WindowSpec(2)) == 1);
    }
    SUBCASE("window excludes the only pair") {
        auto q = queue_of({{a, 1}, {b, 100}});
        CHECK(count_occurrences({a, b}, q, WindowSpec(2)) == 0);
    }
    SUBCASE("same-tuple events never map to one sequence") {
        auto q = queue_of({{a, 5}, {b, 5}});
        CHECK(count_occurrences({a, b}, q, WindowSpec(100)) == 0);
    }
    SUBCASE("empty queue counts zero") {
        CHECK(count_occurrences({a}, AlarmQueue{}, WindowSpec(5)) == 0);
    }
    SUBCASE("repeated-type sequences") {
        auto q = queue_of({{a, 1}, {a, 2}, {a, 3}});
        CHECK(count_occurrences({a, a}, q, WindowSpec(5)) == 1);
        CHECK(count_occurrences({a, a, a}, q, WindowSpec(5)) == 1);
        auto q2 = queue_of({{a, 1}, {a, 2}, {a, 3}, {a, 4}});
        CHECK(count_occurrences({a, a}, q2, WindowSpec(5)) == 2);
    }
}

TEST_CASE("support is the count over the tuple count") {
    auto q = four_event_queue();
    CHECK(support({a, b}, q, WindowSpec(2)) == doctest::Approx(0.5));
    CHECK(support({bts_type(9), a}, q, WindowSpec(2)) == 0.0);
    CHECK(support({a}, queue_of({{a, 1}, {a, 2}}), WindowSpec(1)) == 1.0);
    CHECK_THROWS_AS(support({a}, AlarmQueue{}, WindowSpec(1)), EmptyQueue);
}

TEST_CASE("intra and inter constraints") {
    AlarmSequence two_bts{bts_type(7, 1), bts_type(3, 9)};
    AlarmSequence mixed{bts_type(7, 1), bsc_type(3, 2)};
    AlarmSequence msc_bsc{{{ObjectClass::Msc, 1}, 2}, bsc_type(3, 2)};

    CHECK(satisfies_intra(two_bts));
    CHECK_FALSE(satisfies_intra(mixed));
    CHECK(satisfies_intra({bts_type(7)}));

    CHECK(satisfies_inter(msc_bsc));
    CHECK_FALSE(satisfies_inter(two_bts));
    CHECK_FALSE(satisfies_inter({bts_type(7)}));

    SUBCASE("exactly one of intra/inter holds for length >= 2") {
        SplitMix64 rng(11);
        for (int iter = 0; iter < 200; ++iter) {
            AlarmSequence seq;
            std::size_t m = 2 + rng.below(4);
            for (std::size_t i = 0; i < m; ++i)
                seq.push_back(rng.below(2) ? bts_type(static_cast<std::uint32_t>(rng.below(3)))
                                           : bsc_type(static_cast<std::uint32_t>(rng.below(3))));
            CHECK(satisfies_intra(seq) != satisfies_inter(seq));
        }
    }
}

TEST_CASE("scope constraint over the configuration model") {
    auto model = small_model();
    const ElementId msc1{ObjectClass::Msc, 1};
    AlarmSequence inside{bts_type(1, 42), bts_type(2, 43)}; // both under MSC 1
    AlarmSequence outside{bts_type(1, 42), bts_type(2, 44)}; // one under MSC 2

    CHECK(satisfies_scope(inside, model, msc1));
    CHECK_FALSE(satisfies_scope(outside, model, msc1));
    CHECK(satisfies_scope(outside, model, ElementId::root()));

    SUBCASE("class-threshold mode compares class codes") {
        AlarmSequence with_bsc{bsc_type(1, 8), bts_type(2, 44)}; // classes 20, 30
        CHECK(satisfies_scope(with_bsc, model, {ObjectClass::Msc, 1},
                              ScopeMode::ClassThreshold)); // 20,30 >= 10
        CHECK_FALSE(satisfies_scope(with_bsc, model, {ObjectClass::Bts, 42},
                                    ScopeMode::ClassThreshold)); // 20 < 30
    }
    SUBCASE("unknown scope root") {
        CHECK_THROWS_AS(satisfies_scope(inside, model, {ObjectClass::Msc, 99}),
                        UnknownElement);
    }
}

TEST_CASE("candidate generation") {
    const AlarmType c = bts_type(2), d = bts_type(3);
    SUBCASE("overlap join produces the extension") {
        std::vector<AlarmSequence> f{{a, b}, {b, c}};
        auto cands = generate_candidates(f);
        CHECK(std::count(cands.begin(), cands.end(), AlarmSequence{a, b, c}) == 1);
    }
    SUBCASE("no join without overlap") {
        std::vector<AlarmSequence> f{{a, b}, {c, d}};
        CHECK(generate_candidates(f).empty());
    }
    SUBCASE("length-1 joins produce every ordered pair") {
        std::vector<AlarmSequence> f{{a}, {b}};
        auto cands = generate_candidates(f);
        std::vector<AlarmSequence> expect{{a, a}, {a, b}, {b, a}, {b, b}};
        std::sort(expect.begin(), expect.end());
        CHECK(cands == expect);
    }
    SUBCASE("uniform repeats self-join") {
        std::vector<AlarmSequence> f{{a, a}};
        auto cands = generate_candidates(f);
        CHECK(cands == std::vector<AlarmSequence>{{a, a, a}});
    }
    SUBCASE("mixed lengths are rejected") {
        std::vector<AlarmSequence> f{{a}, {a, b}};
        CHECK_THROWS_AS(generate_candidates(f), MixedLengths);
    }
}

TEST_CASE("candidate pruning by drop-one subsequences") {
    const AlarmType c = bts_type(2);
    std::vector<AlarmSequence> cands{{a, b, c}};
    SUBCASE("kept when every drop-one subsequence is frequent") {
        std::vector<AlarmSequence> f{{a, b}, {b, c}, {a, c}};
        CHECK(prune_candidates(cands, f).size() == 1);
    }
    SUBCASE("pruned when one subsequence is missing") {
        std::vector<AlarmSequence> f{{a, b}, {b, c}};
        CHECK(prune_candidates(cands, f).empty());
    }
    SUBCASE("uniform candidate with its single subsequence") {
        std::vector<AlarmSequence> uniform{{a, a}};
        std::vector<AlarmSequence> f{{a}};
        CHECK(prune_candidates(uniform, f).size() == 1);
    }
}

TEST_CASE("support thresholds") {
    CHECK(SupportThreshold::count(3).effective_count(100) == 3);
    CHECK(SupportThreshold::fraction(0.5).effective_count(4) == 2);
    CHECK(SupportThreshold::fraction(0.5).effective_count(5) == 3); // ceiling
    CHECK(SupportThreshold::fraction(0.001).effective_count(10) == 1); // floor of 1
    CHECK(SupportThreshold::fraction(1.0).effective_count(7) == 7);
    CHECK_THROWS_AS(SupportThreshold::count(0), MinerError);
    CHECK_THROWS_AS(SupportThreshold::fraction(0.0), MinerError);
    CHECK_THROWS_AS(SupportThreshold::fraction(1.5), MinerError);
    CHECK_THROWS_AS(WindowSpec(0), MinerError);
}

TEST_CASE("mine on the four-event queue") {
    auto model = small_model();
    auto q = four_event_queue();
    SUBCASE("threshold 2 finds a, b and <a,b>") {
        auto f = mine(q, model, WindowSpec(2), SupportThreshold::count(2));
        REQUIRE(f.level(1));
        CHECK(f.level(1)->size() == 2);
        CHECK(f.find({a})->count == 2);
        CHECK(f.find({b})->count == 2);
        REQUIRE(f.level(2));
        REQUIRE(f.level(2)->size() == 1);
        CHECK(f.find({a, b})->count == 2);
        CHECK(f.find({a, b})->support == doctest::Approx(0.5));
        CHECK(f.find({b, a}) == nullptr); // one occurrence only
        CHECK(f.level(3) == nullptr);
    }
    SUBCASE("threshold above the queue length finds nothing") {
        auto f = mine(q, model, WindowSpec(2), SupportThreshold::count(5));
        CHECK(f.total() == 0);
    }
    SUBCASE("empty queue is an error") {
        CHECK_THROWS_AS(
            mine(AlarmQueue{}, model, WindowSpec(2), SupportThreshold::count(1)),
            EmptyQueue);
    }
    SUBCASE("unknown scope root is an error") {
        ConstraintConfig c;
        c.scope = ElementId{ObjectClass::Msc, 99};
        CHECK_THROWS_AS(mine(q, model, WindowSpec(2), SupportThreshold::count(1), c),
                        UnknownElement);
    }
}

TEST_CASE("output-mode constraint filters the report only") {
    auto model = small_model();
    // same-class pair (BTS,BTS) and cross-class pair (BTS,BSC), both frequent
    auto q = queue_of({{a, 1}, {b, 2}, {bsc_type(5), 3},
                       {a, 11}, {b, 12}, {bsc_type(5), 13}});
    ConstraintConfig intra_out{ConstraintMode::Intra, std::nullopt,
                               ConstraintApplication::Output, ScopeMode::Subtree};
    auto f = mine(q, model, WindowSpec(5), SupportThreshold::count(2), intra_out);
    REQUIRE(f.level(2));
    for (const auto& e : *f.level(2))
        CHECK(satisfies_intra(e.sequence));
    CHECK(f.find({a, b}) != nullptr);
    CHECK(f.find({a, bsc_type(5)}) == nullptr); // inter pair filtered from the report
    // level 1 is reported unfiltered
    CHECK(f.level(1)->size() == 3);
}

TEST_CASE("count_occurrences equals the brute-force packer") {
    SplitMix64 rng(101);
    for (int iter = 0; iter < 3000; ++iter) {
        auto q = random_queue(rng, 16, 3, 24);
        auto seq = random_sequence(rng, 4, 3);
        WindowSpec w(1 + rng.below(8));
        CAPTURE(iter);
        CHECK(count_occurrences(seq, q, w) == brute_force_count(seq, q, w));
    }
}

TEST_CASE("anti-monotonicity of drop-one subsequences") {
    SplitMix64 rng(202);
    for (int iter = 0; iter < 800; ++iter) {
        auto q = random_queue(rng, 200, 5, 400);
        auto seq = random_sequence(rng, 4, 5);
        if (seq.size() < 2)
            continue;
        WindowSpec w(1 + rng.below(50));
        auto whole = count_occurrences(seq, q, w);
        for (std::size_t drop = 0; drop < seq.size(); ++drop) {
            AlarmSequence sub;
            for (std::size_t i = 0; i < seq.size(); ++i)
                if (i != drop)
                    sub.push_back(seq[i]);
            CHECK(count_occurrences(sub, q, w) >= whole);
        }
    }
}

TEST_CASE("window monotonicity") {
    SplitMix64 rng(303);
    for (int iter = 0; iter < 500; ++iter) {
        auto q = random_queue(rng, 120, 4, 300);
        auto seq = random_sequence(rng, 4, 4);
        std::int64_t w1 = 1 + static_cast<std::int64_t>(rng.below(40));
        std::int64_t w2 = w1 + static_cast<std::int64_t>(rng.below(40));
        CHECK(count_occurrences(seq, q, WindowSpec(w2)) >=
              count_occurrences(seq, q, WindowSpec(w1)));
    }
}

TEST_CASE("mine matches the reference miner on random instances") {
    auto model = small_model();
    SplitMix64 rng(404);
    for (int iter = 0; iter < 60; ++iter) {
        auto q = random_queue(rng, 60, 4, 80);
        WindowSpec w(1 + rng.below(20));
        auto threshold = SupportThreshold::count(1 + rng.below(4));
        auto mined = mine(q, model, w, threshold);
        auto reference = oracle_mine(q, w, threshold, 4);
        // compare levels 1..4 (mine may run deeper than the reference)
        for (std::size_t m = 1; m <= 4; ++m) {
            const auto* a_lvl = mined.level(m);
            const auto* b_lvl = reference.level(m);
            CAPTURE(iter);
            CAPTURE(m);
            if (!b_lvl) {
                CHECK(a_lvl == nullptr);
                continue;
            }
            REQUIRE(a_lvl != nullptr);
            CHECK(*a_lvl == *b_lvl);
        }
    }
}

TEST_CASE("every reported sequence meets the threshold when recounted") {
    auto model = small_model();
    SplitMix64 rng(505);
    for (int iter = 0; iter < 20; ++iter) {
        auto q = random_queue(rng, 150, 5, 200);
        WindowSpec w(1 + rng.below(30));
        std::uint64_t min_count = 1 + rng.below(4);
        auto f = mine(q, model, w, SupportThreshold::count(min_count));
        for (const auto& [m, entries] : f.by_length())
            for (const auto& e : entries) {
                auto recount = count_occurrences(e.sequence, q, w);
                CHECK(recount == e.count);
                CHECK(recount >= min_count);
            }
    }
}

TEST_CASE("partition: unconstrained output splits into intra and inter") {
    auto model = small_model();
    SplitMix64 rng(606);
    for (int iter = 0; iter < 25; ++iter) {
        // events over two classes so both partitions are populated
        std::vector<AlarmEvent> events;
        std::size_t n = 20 + rng.below(120);
        for (std::size_t i = 0; i < n; ++i) {
            AlarmType type = rng.below(2) ? bts_type(static_cast<std::uint32_t>(rng.below(3)))
                                          : bsc_type(static_cast<std::uint32_t>(rng.below(3)));
            events.push_back({type, static_cast<std::int64_t>(rng.below(300))});
        }
        auto q = queue_of(std::move(events));
        WindowSpec w(1 + rng.below(20));
        auto threshold = SupportThreshold::count(2 + rng.below(3));

        ConstraintConfig none{ConstraintMode::None, std::nullopt,
                              ConstraintApplication::Output, ScopeMode::Subtree};
        ConstraintConfig inter{ConstraintMode::Inter, std::nullopt,
                               ConstraintApplication::Output, ScopeMode::Subtree};
        ConstraintConfig intra{ConstraintMode::Intra, std::nullopt,
                               ConstraintApplication::Output, ScopeMode::Subtree};
        auto f_none = mine(q, model, w, threshold, none);
        auto f_inter = mine(q, model, w, threshold, inter);
        auto f_intra = mine(q, model, w, threshold, intra);

        for (std::size_t m = 2; m <= std::max<std::size_t>(f_none.max_length(), 2); ++m) {
            const auto* n_lvl = f_none.level(m);
            std::set<AlarmSequence> uni;
            std::size_t inter_n = 0, intra_n = 0;
            if (const auto* l = f_inter.level(m)) {
                inter_n = l->size();
                for (const auto& e : *l)
                    uni.insert(e.sequence);
            }
            if (const auto* l = f_intra.level(m)) {
                intra_n = l->size();
                for (const auto& e : *l)
                    uni.insert(e.sequence);
            }
            std::size_t none_n = n_lvl ? n_lvl->size() : 0;
            CHECK(none_n == inter_n + intra_n); // disjoint
            CHECK(uni.size() == none_n);        // union covers
            if (n_lvl)
                for (const auto& e : *n_lvl)
                    CHECK(uni.contains(e.sequence));
        }
    }
}

TEST_CASE("scope restricts results monotonically") {
    auto model = small_model();
    // alarms across both MSC subtrees
    std::vector<AlarmEvent> events;
    SplitMix64 rng(707);
    for (int i = 0; i < 200; ++i) {
        std::uint32_t inst = (rng.below(3) == 0) ? 44 : (rng.below(2) ? 42 : 43);
        events.push_back({bts_type(static_cast<std::uint32_t>(rng.below(3)), inst),
                          static_cast<std::int64_t>(rng.below(400))});
    }
    auto q = queue_of(std::move(events));
    WindowSpec w(10);
    auto threshold = SupportThreshold::count(2);

    auto with_scope = [&](std::optional<ElementId> scope) {
        ConstraintConfig c;
        c.scope = scope;
        return mine(q, model, w, threshold, c);
    };
    auto f_all = with_scope(std::nullopt);
    auto f_root = with_scope(ElementId::root());
    auto f_msc1 = with_scope(ElementId{ObjectClass::Msc, 1});
    auto f_bsc7 = with_scope(ElementId{ObjectClass::Bsc, 7});

    CHECK(f_root == f_all); // root scope is a no-op

    auto contains_all = [](const FrequentSet& big, const FrequentSet& small) {
        for (const auto& [m, entries] : small.by_length())
            for (const auto& e : entries)
                if (!big.find(e.sequence))
                    return false;
        return true;
    };
    CHECK(contains_all(f_msc1, f_bsc7));
    CHECK(contains_all(f_root, f_msc1));

    // every reported element lies in the scope subtree
    for (const auto& [m, entries] : f_msc1.by_length())
        for (const auto& e : entries)
            for (const auto& t : e.sequence)
                CHECK(model.in_scope({ObjectClass::Msc, 1}, t.element));
}

TEST_CASE("mining is deterministic across worker counts") {
    auto model = small_model();
    SplitMix64 rng(808);
    std::vector<AlarmEvent> events;
    for (int i = 0; i < 400; ++i)
        events.push_back({bts_type(static_cast<std::uint32_t>(rng.below(6))),
                          static_cast<std::int64_t>(rng.below(900))});
    auto q = queue_of(std::move(events));
    auto f1 = mine(q, model, WindowSpec(25), SupportThreshold::count(2), {}, 1);
    auto f2 = mine(q, model, WindowSpec(25), SupportThreshold::count(2), {}, 2);
    auto f5 = mine(q, model, WindowSpec(25), SupportThreshold::count(2), {}, 5);
    CHECK(f1 == f2);
    CHECK(f1 == f5);
}

TEST_CASE("generation mode prunes inter extensions the literal way") {
    auto model = small_model();
    // chain: bts alarm -> bsc alarm -> bts alarm; the middle pair is inter but
    // the <bts,bts> subsequence is intra, so generation mode cannot reach the
    // inter triple while output mode can
    std::vector<AlarmEvent> events;
    for (int i = 0; i < 30; ++i) {
        std::int64_t base = i * 100;
        events.push_back({a, base});
        events.push_back({bsc_type(9), base + 1});
        events.push_back({b, base + 2});
    }
    auto q = queue_of(std::move(events));
    WindowSpec w(5);
    auto threshold = SupportThreshold::count(5);

    ConstraintConfig gen{ConstraintMode::Inter, std::nullopt,
                         ConstraintApplication::Generation, ScopeMode::Subtree};
    ConstraintConfig out{ConstraintMode::Inter, std::nullopt,
                         ConstraintApplication::Output, ScopeMode::Subtree};
    auto f_gen = mine(q, model, w, threshold, gen);
    auto f_out = mine(q, model, w, threshold, out);

    AlarmSequence triple{a, bsc_type(9), b};
    CHECK(f_out.find(triple) != nullptr);      // complete search reaches it
    CHECK(f_gen.find(triple) == nullptr);      // pruned: <a,b> was filtered at level 2
    CHECK(f_gen.find({a, bsc_type(9)}) != nullptr); // inter pairs survive
    CHECK(f_gen.find({a, b}) == nullptr);
    // generation-mode results are a subset of output-mode results
    for (const auto& [m, entries] : f_gen.by_length())
        if (m >= 2)
            for (const auto& e : entries)
                CHECK(f_out.find(e.sequence) != nullptr);
}
