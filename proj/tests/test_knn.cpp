#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <stdexcept>

#include "adlab/knn.hpp"
#include "support.hpp"

using namespace adlab;

namespace {

RowMatrix column(const std::vector<double>& values) {
    RowMatrix m(values.size(), 1);
    for (std::size_t i = 0; i < values.size(); ++i) m.at(i, 0) = values[i];
    return m;
}

} // namespace

TEST_CASE("hand-enumerated 1-D example") {
    // training points {0, 1, 10}; query 0 has neighbors {0, 1}
    const auto train = column({0.0, 1.0, 10.0});
    KnnConfig config;
    config.k = 2;
    const auto index = knn_fit(train, config);
    const auto scores = knn_score(index, column({0.0}), config);
    CHECK(scores[0] == doctest::Approx(0.5).epsilon(1e-14));

    KnnConfig kth = config;
    kth.aggregation = KnnAggregation::kth_distance;
    CHECK(knn_score(index, column({0.0}), kth)[0] == doctest::Approx(1.0));
}

TEST_CASE("query on a training row with k=1 scores zero") {
    RandomStream rs(3);
    const auto train = testsupport::random_matrix(rs, 20, 4);
    KnnConfig config;
    config.k = 1;
    config.aggregation = KnnAggregation::kth_distance;
    const auto index = knn_fit(train, config);
    const auto scores = knn_score(index, train, config);
    for (double s : scores) CHECK(s == 0.0);
}

TEST_CASE("training-row permutation leaves scores unchanged") {
    RandomStream rs(5);
    const auto train = testsupport::random_matrix(rs, 30, 3);
    const auto queries = testsupport::random_matrix(rs, 10, 3);
    std::vector<std::size_t> perm(train.rows);
    for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = perm.size() - 1 - i;

    KnnConfig config;
    config.k = 4;
    const auto a = knn_score(knn_fit(train, config), queries, config);
    const auto b = knn_score(knn_fit(train.select_rows(perm), config), queries, config);
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i] == doctest::Approx(b[i]).epsilon(1e-14));
    }
}

TEST_CASE("joint translation leaves scores unchanged") {
    RandomStream rs(7);
    auto train = testsupport::random_matrix(rs, 25, 2);
    auto queries = testsupport::random_matrix(rs, 8, 2);
    KnnConfig config;
    config.k = 3;
    const auto before = knn_score(knn_fit(train, config), queries, config);
    for (std::size_t r = 0; r < train.rows; ++r) {
        train.at(r, 0) += 17.0;
        train.at(r, 1) -= 4.0;
    }
    for (std::size_t r = 0; r < queries.rows; ++r) {
        queries.at(r, 0) += 17.0;
        queries.at(r, 1) -= 4.0;
    }
    const auto after = knn_score(knn_fit(train, config), queries, config);
    for (std::size_t i = 0; i < before.size(); ++i) {
        CHECK(before[i] == doctest::Approx(after[i]).epsilon(1e-9));
    }
}

TEST_CASE("matches exhaustive sort of all pairwise distances") {
    RandomStream rs(11);
    for (int trial = 0; trial < 25; ++trial) {
        const std::size_t n = 5 + static_cast<std::size_t>(rs.next_uniform() * 40);
        const std::size_t dim = 1 + static_cast<std::size_t>(rs.next_uniform() * 5);
        const auto train = testsupport::random_matrix(rs, n, dim);
        const auto queries = testsupport::random_matrix(rs, 6, dim);
        KnnConfig config;
        config.k = 1 + static_cast<int>(rs.next_uniform() * (n - 1));
        config.aggregation =
            trial % 2 ? KnnAggregation::kth_distance : KnnAggregation::mean_of_k;
        const auto got = knn_score(knn_fit(train, config), queries, config);
        const auto want = testsupport::knn_scores_bruteforce(
            train, queries, config.k, config.aggregation == KnnAggregation::kth_distance);
        for (std::size_t i = 0; i < got.size(); ++i) {
            CHECK(got[i] == doctest::Approx(want[i]).epsilon(1e-12));
        }
    }
}

TEST_CASE("kth distance never grows as training points are added") {
    RandomStream rs(13);
    auto train = testsupport::random_matrix(rs, 12, 3);
    const auto queries = testsupport::random_matrix(rs, 5, 3);
    KnnConfig config;
    config.k = 4;
    config.aggregation = KnnAggregation::kth_distance;
    auto prev = knn_score(knn_fit(train, config), queries, config);
    for (int step = 0; step < 6; ++step) {
        const auto extra = testsupport::random_matrix(rs, 4, 3);
        train.data.insert(train.data.end(), extra.data.begin(), extra.data.end());
        train.rows += extra.rows;
        const auto next = knn_score(knn_fit(train, config), queries, config);
        for (std::size_t i = 0; i < next.size(); ++i) {
            CHECK(next[i] <= prev[i] + 1e-12);
        }
        prev = next;
    }
}

TEST_CASE("configuration and shape errors") {
    RandomStream rs(17);
    const auto train = testsupport::random_matrix(rs, 5, 2);
    KnnConfig config;
    config.k = 6;
    CHECK_THROWS_AS(knn_fit(train, config), std::invalid_argument);
    config.k = 0;
    CHECK_THROWS_AS(knn_fit(train, config), std::invalid_argument);

    config.k = 2;
    const auto index = knn_fit(train, config);
    const auto bad_queries = testsupport::random_matrix(rs, 3, 4);
    CHECK_THROWS_AS(knn_score(index, bad_queries, config), std::invalid_argument);

    auto poisoned = train;
    poisoned.at(0, 0) = std::nan("");
    CHECK_THROWS_AS(knn_fit(poisoned, config), std::invalid_argument);
}
