#include <doctest.h>

#include <algorithm>
#include <random>

#include "sgrid/dataset.hpp"
#include "test_util.hpp"

using namespace sgrid;

TEST_CASE("load_csv parses a plain numeric file") {
    testutil::TempFile f("1,2\n3,4\n5,6\n");
    Dataset ds = load_csv(f.path(), false);
    CHECK(ds.n() == 3);
    CHECK(ds.d() == 2);
    CHECK(ds.value(0, 0) == 1.0);
    CHECK(ds.value(2, 1) == 6.0);
}

TEST_CASE("load_csv honors a header line") {
    testutil::TempFile f("alpha,beta\n1,2\n3,4\n");
    CHECK(csv_has_header(f.path()));
    Dataset ds = load_csv(f.path(), true);
    CHECK(ds.n() == 2);
    CHECK(ds.attribute_names() == std::vector<std::string>{"alpha", "beta"});

    testutil::TempFile g("1,2\n3,4\n");
    CHECK_FALSE(csv_has_header(g.path()));
}

TEST_CASE("load_csv names the offending cell") {
    testutil::TempFile f("1,2\nabc,4\n");
    CHECK_THROWS_WITH_AS(load_csv(f.path(), false), doctest::Contains("row 2"), LoadError);
    try {
        load_csv(f.path(), false);
    } catch (const LoadError& e) {
        CHECK(std::string(e.what()).find("column 1") != std::string::npos);
    }
}

TEST_CASE("load_csv rejects empty and malformed input") {
    testutil::TempFile empty("");
    CHECK_THROWS_AS(load_csv(empty.path(), false), LoadError);

    testutil::TempFile ragged("1,2\n3\n");
    CHECK_THROWS_AS(load_csv(ragged.path(), false), LoadError);

    testutil::TempFile inf("1,2\ninf,4\n");
    CHECK_THROWS_AS(load_csv(inf.path(), false), LoadError);

    CHECK_THROWS_AS(load_csv("no_such_file.csv", false), LoadError);
}

TEST_CASE("constant columns are flagged but kept") {
    Dataset ds = Dataset::from_columns({{1, 1, 1}, {1, 2, 3}});
    CHECK(ds.is_constant(0));
    CHECK_FALSE(ds.is_constant(1));
}

TEST_CASE("from_columns validates shape and values") {
    CHECK_THROWS_AS(Dataset::from_columns({}), LoadError);
    CHECK_THROWS_AS(Dataset::from_columns({{}}), LoadError);
    CHECK_THROWS_AS(Dataset::from_columns({{1, 2}, {1}}), LoadError);
    CHECK_THROWS_AS(Dataset::from_columns({{1, std::nan("")}}), LoadError);
}

TEST_CASE("attribute_stats uses nearest-rank quartiles") {
    Dataset ds = Dataset::from_columns({{1, 2, 3, 4, 5, 6, 7, 8}});
    AttributeStats st = attribute_stats(ds, 0);
    CHECK(st.q1 == 2.0);
    CHECK(st.q3 == 6.0);
    CHECK(st.iqr == 4.0);
    CHECK(st.min == 1.0);
    CHECK(st.max == 8.0);
}

TEST_CASE("attribute_stats degenerate cases") {
    Dataset constant = Dataset::from_columns({{5, 5, 5, 5}});
    AttributeStats st = attribute_stats(constant, 0);
    CHECK(st.iqr == 0.0);
    CHECK(st.stddev == 0.0);

    Dataset two = Dataset::from_columns({{0, 10}});
    st = attribute_stats(two, 0);
    CHECK(st.min == 0.0);
    CHECK(st.max == 10.0);

    Dataset one = Dataset::from_columns({{3.5}});
    st = attribute_stats(one, 0);
    CHECK(st.q1 == 3.5);
    CHECK(st.q3 == 3.5);
    CHECK(st.stddev == 0.0);
}

TEST_CASE("attribute_stats is population stddev") {
    Dataset ds = Dataset::from_columns({{1, 3}});
    // population: sqrt(((1-2)^2 + (3-2)^2)/2) = 1
    CHECK(attribute_stats(ds, 0).stddev == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("attribute_stats is row-order independent") {
    std::mt19937_64 rng(7);
    Dataset ds = testutil::random_dataset(rng, 101, 3);
    std::vector<std::vector<double>> cols;
    for (int a = 0; a < ds.d(); ++a) cols.push_back(ds.column(a));

    std::vector<int> perm(101);
    for (int i = 0; i < 101; ++i) perm[static_cast<std::size_t>(i)] = i;
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<std::vector<double>> shuffled(cols.size());
    for (std::size_t a = 0; a < cols.size(); ++a) {
        shuffled[a].resize(cols[a].size());
        for (std::size_t i = 0; i < perm.size(); ++i)
            shuffled[a][i] = cols[a][static_cast<std::size_t>(perm[i])];
    }
    Dataset ds2 = Dataset::from_columns(shuffled);

    for (int a = 0; a < ds.d(); ++a) {
        AttributeStats s1 = attribute_stats(ds, a);
        AttributeStats s2 = attribute_stats(ds2, a);
        CHECK(s1.min == s2.min);
        CHECK(s1.max == s2.max);
        CHECK(s1.q1 == s2.q1);
        CHECK(s1.q3 == s2.q3);
        CHECK(s1.stddev == s2.stddev);  // exact: moments run over the sorted copy
    }
}

TEST_CASE("iqr never exceeds the range") {
    std::mt19937_64 rng(11);
    for (int rep = 0; rep < 20; ++rep) {
        Dataset ds = testutil::random_dataset(rng, 37, 4, /*allow_constant=*/true);
        for (int a = 0; a < ds.d(); ++a) {
            AttributeStats st = attribute_stats(ds, a);
            CHECK(st.iqr <= st.max - st.min);
            CHECK(st.min <= st.q1);
            CHECK(st.q1 <= st.q3);
            CHECK(st.q3 <= st.max);
        }
    }
}
