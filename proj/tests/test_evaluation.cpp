#include <algorithm>
#include <cmath>
#include <memory>
#include <vector>

#include "blc/evaluation.hpp"
#include "doctest.h"

using namespace blc;

namespace {

LoopDetection det(std::uint64_t q, std::uint64_t m, bool accepted = true) {
    LoopDetection d;
    d.query_id = q;
    d.match_id = m;
    d.xi = 0.5;
    d.match_count = 25;
    d.accepted = accepted;
    return d;
}

}  // namespace

TEST_CASE("a detection near a truth pair counts as a true positive") {
    const std::vector<GroundTruthPair> truth = {{100, 5}};
    const std::vector<LoopDetection> dets = {det(102, 4)};

    const EvalReport r = score(dets, truth, 3);
    CHECK(r.true_positives == 1);
    CHECK(r.false_positives == 0);
    CHECK(r.total_truth == 1);
    CHECK(r.recall_rate == 100.0);
    REQUIRE(r.precision.has_value());
    CHECK(*r.precision == 100.0);
}

TEST_CASE("both indices must be within tolerance") {
    const std::vector<GroundTruthPair> truth = {{100, 5}};

    SUBCASE("query drifts too far") {
        const EvalReport r = score({det(104, 5)}, truth, 3);
        CHECK(r.true_positives == 0);
        CHECK(r.false_positives == 1);
    }

    SUBCASE("match drifts too far") {
        const EvalReport r = score({det(100, 9)}, truth, 3);
        CHECK(r.true_positives == 0);
        CHECK(r.false_positives == 1);
    }

    SUBCASE("boundary is inclusive") {
        const EvalReport r = score({det(103, 8)}, truth, 3);
        CHECK(r.true_positives == 1);
        CHECK(r.false_positives == 0);
    }
}

TEST_CASE("each truth pair absorbs at most one detection") {
    const std::vector<GroundTruthPair> truth = {{100, 5}};
    const std::vector<LoopDetection> dets = {det(99, 5), det(101, 5)};

    const EvalReport r = score(dets, truth, 3);
    CHECK(r.true_positives == 1);
    CHECK(r.false_positives == 1);
    REQUIRE(r.precision.has_value());
    CHECK(*r.precision == 50.0);
}

TEST_CASE("scoring ignores input order") {
    const std::vector<GroundTruthPair> truth = {{100, 5}, {200, 50}, {300, 120}};
    std::vector<LoopDetection> dets = {det(300, 121), det(100, 5), det(202, 49)};

    const EvalReport forward = score(dets, truth, 3);
    std::reverse(dets.begin(), dets.end());
    std::vector<GroundTruthPair> shuffled = {truth[2], truth[0], truth[1]};
    const EvalReport backward = score(dets, shuffled, 3);

    CHECK(forward.true_positives == 3);
    CHECK(backward.true_positives == forward.true_positives);
    CHECK(backward.false_positives == forward.false_positives);
}

TEST_CASE("zero tolerance demands exact agreement") {
    const std::vector<GroundTruthPair> truth = {{10, 2}, {20, 3}};
    const std::vector<LoopDetection> dets = {det(10, 2), det(20, 4)};

    const EvalReport r = score(dets, truth, 0);
    CHECK(r.true_positives == 1);
    CHECK(r.false_positives == 1);
}

TEST_CASE("rejected detections never reach the scorer") {
    const std::vector<GroundTruthPair> truth = {{10, 2}};
    const std::vector<LoopDetection> dets = {det(10, 2, false), det(50, 3, false)};

    const EvalReport r = score(dets, truth, 3);
    CHECK(r.true_positives == 0);
    CHECK(r.false_positives == 0);
    CHECK_FALSE(r.precision.has_value());
    CHECK(r.recall_rate == 0.0);
}

TEST_CASE("empty inputs") {
    SUBCASE("no truth means zero recall, not a crash") {
        const EvalReport r = score({det(10, 2)}, {}, 3);
        CHECK(r.total_truth == 0);
        CHECK(r.recall_rate == 0.0);
        CHECK(r.false_positives == 1);
        REQUIRE(r.precision.has_value());
        CHECK(*r.precision == 0.0);
    }

    SUBCASE("no detections means undefined precision") {
        const EvalReport r = score({}, {{10, 2}}, 3);
        CHECK_FALSE(r.precision.has_value());
        CHECK(r.recall_rate == 0.0);
        CHECK(r.total_truth == 1);
    }
}

TEST_CASE("hand-scored micro run") {
    // Truth from a 5-frame square loop; two accepted detections, one of which
    // only lands inside the loosened tolerance.
    const std::vector<GroundTruthPair> truth = {{3, 0}, {4, 0}, {4, 1}};
    const std::vector<LoopDetection> dets = {det(4, 0), det(3, 1)};

    const EvalReport tight = score(dets, truth, 0);
    CHECK(tight.true_positives == 1);
    CHECK(tight.false_positives == 1);
    CHECK(std::abs(tight.recall_rate - 100.0 / 3.0) < 1e-12);
    REQUIRE(tight.precision.has_value());
    CHECK(*tight.precision == 50.0);

    const EvalReport loose = score(dets, truth, 1);
    CHECK(loose.true_positives == 2);
    CHECK(loose.false_positives == 0);
    CHECK(std::abs(loose.recall_rate - 200.0 / 3.0) < 1e-12);
    REQUIRE(loose.precision.has_value());
    CHECK(*loose.precision == 100.0);
}

TEST_CASE("metric monotonicity spot checks") {
    const std::vector<GroundTruthPair> truth = {{100, 5}, {200, 50}};
    const std::vector<LoopDetection> base = {det(100, 5)};

    const EvalReport before = score(base, truth, 3);

    SUBCASE("adding a false positive cannot raise precision") {
        std::vector<LoopDetection> more = base;
        more.push_back(det(500, 7));
        const EvalReport after = score(more, truth, 3);
        REQUIRE(before.precision.has_value());
        REQUIRE(after.precision.has_value());
        CHECK(*after.precision <= *before.precision);
        CHECK(after.recall_rate == before.recall_rate);
    }

    SUBCASE("adding a true positive cannot lower recall") {
        std::vector<LoopDetection> more = base;
        more.push_back(det(200, 50));
        const EvalReport after = score(more, truth, 3);
        CHECK(after.recall_rate >= before.recall_rate);
        CHECK(after.true_positives == 2);
    }
}

TEST_CASE("stage timer aggregates per-stage samples") {
    StageTimer timer;
    timer.add("saliency", 2.0);
    timer.add("saliency", 4.0);
    timer.add("retrieval", 1.0);

    REQUIRE(timer.mean("saliency").has_value());
    CHECK(*timer.mean("saliency") == 3.0);
    CHECK(*timer.mean("retrieval") == 1.0);
    CHECK_FALSE(timer.mean("verification").has_value());

    CHECK(timer.sample_count("saliency") == 2);
    CHECK(timer.sample_count("verification") == 0);
    CHECK(timer.samples("saliency").size() == 2);
    CHECK(timer.samples("verification").empty());

    const auto means = timer.means();
    REQUIRE(means.size() == 2);
    CHECK(means.at("saliency") == 3.0);
    CHECK(means.at("retrieval") == 1.0);
}

TEST_CASE("time_stage records and passes results through") {
    StageTimer timer;

    SUBCASE("value-returning callable") {
        const int v = time_stage(timer, "work", [] { return 41 + 1; });
        CHECK(v == 42);
        REQUIRE(timer.mean("work").has_value());
        CHECK(*timer.mean("work") >= 0.0);
        CHECK(timer.sample_count("work") == 1);
    }

    SUBCASE("void callable") {
        bool ran = false;
        time_stage(timer, "side_effect", [&] { ran = true; });
        CHECK(ran);
        CHECK(timer.sample_count("side_effect") == 1);
    }

    SUBCASE("move-only results survive") {
        auto ptr = time_stage(timer, "alloc",
                              [] { return std::make_unique<int>(7); });
        REQUIRE(ptr != nullptr);
        CHECK(*ptr == 7);
    }

    SUBCASE("nested stages both record") {
        time_stage(timer, "outer", [&] {
            time_stage(timer, "inner", [] { return 1; });
        });
        CHECK(timer.sample_count("outer") == 1);
        CHECK(timer.sample_count("inner") == 1);
        CHECK(*timer.mean("outer") >= *timer.mean("inner"));
    }
}
