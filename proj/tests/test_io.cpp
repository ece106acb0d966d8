#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "votemap/core.hpp"
#include "votemap/io.hpp"

using namespace votemap;

namespace {

OrdinalElection make_election(int m, const std::vector<std::vector<int>>& rankings) {
    OrdinalElection e;
    e.num_candidates = m;
    for (const auto& r : rankings) e.votes.push_back(PreferenceOrder{r});
    check_valid(e);
    return e;
}

int count_occurrences(const std::string& haystack, const std::string& needle) {
    int count = 0;
    for (auto pos = haystack.find(needle); pos != std::string::npos;
         pos = haystack.find(needle, pos + needle.size()))
        ++count;
    return count;
}

}  // namespace

TEST_SUITE("io") {

TEST_CASE("doubles print with nine significant digits") {
    CHECK(format_double(0.5) == "0.5");
    CHECK(format_double(2.0) == "2");
    CHECK(format_double(-1.25) == "-1.25");
    CHECK(format_double(1.0 / 3.0) == "0.333333333");
    CHECK(format_double(1e-10) == "1e-10");
    CHECK(format_double(0.0) == "0");
}

TEST_CASE("culture strings parse into full specs") {
    CHECK(parse_culture("ic").kind == CultureKind::IC);
    CHECK(parse_culture(" urn:alpha=0.1 ").alpha == doctest::Approx(0.1));
    CHECK(parse_culture("mallows:phi=0.4").phi == doctest::Approx(0.4));

    const CultureSpec nm = parse_culture("norm-mallows:norm_phi=0.5");
    CHECK(nm.kind == CultureKind::NormMallows);
    CHECK(nm.norm_phi == doctest::Approx(0.5));
    CHECK(nm.weight == doctest::Approx(0.0));
    CHECK(parse_culture("norm-mallows:norm_phi=0.5,weight=0.25").weight ==
          doctest::Approx(0.25));

    CHECK(parse_culture("walsh").kind == CultureKind::Walsh);
    CHECK(parse_culture("single-crossing").kind == CultureKind::SingleCrossing);
    CHECK(parse_culture("gs-balanced").tree == GSTree::Balanced);
    CHECK(parse_culture("gs-caterpillar").tree == GSTree::Caterpillar);

    const CultureSpec interval = parse_culture("euclidean");
    CHECK(interval.kind == CultureKind::Euclidean);
    CHECK(interval.space == EuclideanSpace::Interval);
    CHECK(interval.dimension == 1);
    CHECK(parse_culture("euclidean:space=disc").space == EuclideanSpace::Disc);
    const CultureSpec ncube = parse_culture("euclidean:space=ncube,dim=4");
    CHECK(ncube.space == EuclideanSpace::NCube);
    CHECK(ncube.dimension == 4);

    CHECK(parse_culture("compass:point=an").compass == CompassKind::AN);
    CHECK(parse_culture("compass:point=st").compass == CompassKind::ST);

    CHECK_THROWS_AS(parse_culture("zipf"), ParseError);
    CHECK_THROWS_AS(parse_culture("urn"), ParseError);
    CHECK_THROWS_AS(parse_culture("ic:alpha=1"), ParseError);
    CHECK_THROWS_AS(parse_culture("euclidean:space=torus"), ParseError);
    CHECK_THROWS_AS(parse_culture("compass:point=xx"), ParseError);
    CHECK_THROWS_AS(parse_culture("compass"), ParseError);
}

TEST_CASE("approval culture strings parse into full specs") {
    CHECK(parse_approval_culture("pic:p=0.3").p == doctest::Approx(0.3));
    CHECK(parse_approval_culture("pid:p=0.4").kind == ApprovalCultureKind::PID);

    const ApprovalCultureSpec rs = parse_approval_culture("resampling:p=0.5,phi=0.75");
    CHECK(rs.kind == ApprovalCultureKind::Resampling);
    CHECK(rs.p == doctest::Approx(0.5));
    CHECK(rs.phi == doctest::Approx(0.75));

    const ApprovalCultureSpec dj = parse_approval_culture("disjoint:p=0.2,phi=0.4,g=3");
    CHECK(dj.groups == 3);
    CHECK(parse_approval_culture("moving:p=0.3,phi=0.5").groups == 1);

    const ApprovalCultureSpec nj = parse_approval_culture("noise:p=0.4,phi=0.3,metric=jaccard");
    CHECK(nj.noise_metric == ApprovalMetric::Jaccard);
    CHECK(parse_approval_culture("noise:p=0.4,phi=0.3").noise_metric ==
          ApprovalMetric::Hamming);

    CHECK(parse_approval_culture("euclidean-2d:radius=0.25").radius == doctest::Approx(0.25));
    const ApprovalCultureSpec tu = parse_approval_culture("truncated-urn:p=0.3,alpha=0.1");
    CHECK(tu.kind == ApprovalCultureKind::TruncatedUrn);
    CHECK(tu.alpha == doctest::Approx(0.1));

    CHECK_THROWS_AS(parse_approval_culture("borda"), ParseError);
    CHECK_THROWS_AS(parse_approval_culture("noise:p=0.4,phi=0.3,metric=cosine"), ParseError);
    CHECK_THROWS_AS(parse_approval_culture("pic:p=0.3,q=1"), ParseError);
    CHECK_THROWS_AS(parse_approval_culture("resampling:p=0.5"), ParseError);
}

TEST_CASE("election text round trips exactly") {
    const OrdinalElection e = make_election(4, {{0, 1, 2, 3}, {2, 0, 3, 1}, {2, 0, 3, 1}});
    const std::string text = write_election(e);
    CHECK(text == "# candidates: 4\n0>1>2>3\n2>0>3>1\n2>0>3>1\n");
    const OrdinalElection back = parse_election(text);
    CHECK(back.num_candidates == 4);
    REQUIRE(back.n() == 3);
    for (int i = 0; i < 3; ++i) CHECK(back.votes[i].ranking == e.votes[i].ranking);

    const OrdinalElection empty = parse_election("# candidates: 5\n");
    CHECK(empty.m() == 5);
    CHECK(empty.n() == 0);
}

TEST_CASE("election parsing handles count prefixes and reports line numbers") {
    const OrdinalElection e = parse_election("3 * 1>0>2\n0>1>2\n");
    CHECK(e.m() == 3);
    REQUIRE(e.n() == 4);
    CHECK(e.votes[0].ranking == std::vector<int>{1, 0, 2});
    CHECK(e.votes[2].ranking == std::vector<int>{1, 0, 2});
    CHECK(e.votes[3].ranking == std::vector<int>{0, 1, 2});

    CHECK_THROWS_AS(parse_election(""), ParseError);
    CHECK_THROWS_AS(parse_election("0>1>1\n"), ParseError);
    CHECK_THROWS_AS(parse_election("0>1>7\n"), ParseError);
    CHECK_THROWS_AS(parse_election("0 * 0>1\n"), ParseError);
    CHECK_THROWS_AS(parse_election("a>b\n"), ParseError);
    try {
        parse_election("0>1>2\n0>1\n");
        CHECK(false);
    } catch (const ParseError& err) {
        CHECK(std::string(err.what()).find("line 2") != std::string::npos);
    }
}

TEST_CASE("approval text round trips with empty ballots intact") {
    ApprovalElection e;
    e.num_candidates = 5;
    e.votes.push_back(ApprovalBallot{{0, 2, 4}});
    e.votes.push_back(ApprovalBallot{});
    e.votes.push_back(ApprovalBallot{{1}});
    const std::string text = write_approval_election(e);
    CHECK(text == "# candidates: 5\n0,2,4\n\n1\n");
    const ApprovalElection back = parse_approval_election(text);
    CHECK(back.m() == 5);
    REQUIRE(back.n() == 3);
    CHECK(back.votes[0].approved == std::vector<int>{0, 2, 4});
    CHECK(back.votes[1].approved.empty());
    CHECK(back.votes[2].approved == std::vector<int>{1});

    // without a header the candidate count comes from the largest index
    const ApprovalElection inferred = parse_approval_election("2,0\n3\n");
    CHECK(inferred.m() == 4);
    CHECK(inferred.votes[0].approved == std::vector<int>{0, 2});

    CHECK_THROWS_AS(parse_approval_election("0,0\n"), ParseError);
    CHECK_THROWS_AS(parse_approval_election("# candidates: 2\n0,5\n"), ParseError);
}

TEST_CASE("preflib files parse, complete and round trip") {
    const std::string text =
        "# comment\n"
        "3\n"
        "1,Apple\n"
        "2,Pear\n"
        "3,Plum\n"
        "5,5,3\n"
        "3,1,2,3\n"
        "1,{1,2},3\n"
        "1,1\n";
    const PrefLibData data = parse_preflib_soc(text);
    CHECK(data.num_candidates == 3);
    CHECK(data.names == std::vector<std::string>{"Apple", "Pear", "Plum"});
    REQUIRE(data.records.size() == 3);
    CHECK(data.records[0].multiplicity == 3);
    CHECK(data.records[0].groups ==
          std::vector<std::vector<int>>{{0}, {1}, {2}});
    CHECK(data.records[1].groups == std::vector<std::vector<int>>{{0, 1}, {2}});
    CHECK(data.records[2].groups == std::vector<std::vector<int>>{{0}});

    const PrefLibData again = parse_preflib_soc(write_preflib_soc(data));
    CHECK(again.num_candidates == data.num_candidates);
    CHECK(again.names == data.names);
    REQUIRE(again.records.size() == data.records.size());
    for (std::size_t i = 0; i < data.records.size(); ++i) {
        CHECK(again.records[i].multiplicity == data.records[i].multiplicity);
        CHECK(again.records[i].groups == data.records[i].groups);
    }

    Rng rng(601);
    const OrdinalElection votes = complete_votes(data, rng);
    CHECK(votes.m() == 3);
    CHECK(votes.n() == 5);
    check_valid(votes);
    // the tie-broken vote keeps Plum last; the bare prefix grows by copying
    // the unique matching complete reference
    CHECK(votes.votes[3].ranking[2] == 2);
    CHECK(votes.votes[4].ranking == std::vector<int>{0, 1, 2});

    CHECK_THROWS_AS(parse_preflib_soc("2\n1,A\n2,B\n3,3,1\n2,1,2\n"), ParseError);
    CHECK_THROWS_AS(parse_preflib_soc("2\n1,A\n2,B\n1,1,1\n1,1,2\nleftover\n"),
                    ParseError);
    CHECK_THROWS_AS(parse_preflib_soc("2\n1,A\n2,B\n1,1,1\n1,1,{2\n"), ParseError);
    CHECK_THROWS_AS(parse_preflib_soc("2\n2,B\n"), ParseError);
}

TEST_CASE("restricting to top candidates keeps borda leaders") {
    const OrdinalElection e = make_election(5, {{0, 2, 1, 3, 4},
                                                {0, 2, 1, 4, 3},
                                                {3, 4, 1, 2, 0},
                                                {1, 4, 3, 2, 0},
                                                {2, 1, 4, 3, 0}});
    // borda scores are (8, 13, 12, 8, 9): the top three are 1, 2 and 4
    const OrdinalElection top3 = restrict_top_candidates(e, 3);
    CHECK(top3.m() == 3);
    CHECK(top3.n() == 5);
    CHECK(top3.votes[1].ranking == std::vector<int>{1, 0, 2});

    // the 8-8 tie resolves to the lower index, keeping candidate 0
    const OrdinalElection top4 = restrict_top_candidates(e, 4);
    CHECK(top4.m() == 4);
    CHECK(top4.votes[0].ranking == std::vector<int>{0, 2, 1, 3});

    CHECK_THROWS_AS(restrict_top_candidates(e, 0), std::invalid_argument);
    CHECK_THROWS_AS(restrict_top_candidates(e, 6), std::invalid_argument);
}

TEST_CASE("voter sampling draws only existing votes") {
    const OrdinalElection e = make_election(3, {{0, 1, 2}, {2, 1, 0}});
    Rng rng(602);
    const OrdinalElection out = sample_voters(e, 100, rng);
    CHECK(out.m() == 3);
    CHECK(out.n() == 100);
    int first = 0;
    for (const auto& v : out.votes) {
        const bool is_first = v.ranking == e.votes[0].ranking;
        CHECK((is_first || v.ranking == e.votes[1].ranking));
        first += is_first ? 1 : 0;
    }
    CHECK(first > 20);
    CHECK(first < 80);

    Rng again(602);
    const OrdinalElection repeat = sample_voters(e, 100, again);
    for (int i = 0; i < 100; ++i) CHECK(repeat.votes[i].ranking == out.votes[i].ranking);

    Rng other(603);
    CHECK(sample_voters(e, 0, other).n() == 0);
    OrdinalElection hollow;
    hollow.num_candidates = 3;
    CHECK_THROWS_AS(sample_voters(hollow, 5, other), std::invalid_argument);
}

TEST_CASE("distance matrices survive the csv round trip") {
    DistanceMatrix dm;
    dm.labels = {"ID", "UN", "mallows_0"};
    dm.d = {{0.0, 5.0, 1.0 / 3.0}, {5.0, 0.0, 2.5}, {1.0 / 3.0, 2.5, 0.0}};
    const std::string text = write_distance_csv(dm);
    CHECK(text.rfind("ID,UN,mallows_0\n", 0) == 0);
    const DistanceMatrix back = parse_distance_csv(text);
    CHECK(back.labels == dm.labels);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            CHECK(back.at(i, j) == doctest::Approx(dm.at(i, j)).epsilon(1e-9));

    CHECK_THROWS_AS(parse_distance_csv(""), ParseError);
    CHECK_THROWS_AS(parse_distance_csv("a,b\n0,1\n"), ParseError);
    CHECK_THROWS_AS(parse_distance_csv("a,b\n0,1\n1\n"), ParseError);
    CHECK_THROWS_AS(parse_distance_csv("a,b\n0,x\n1,0\n"), ParseError);
}

TEST_CASE("coordinates survive the csv round trip") {
    Embedding q;
    q.labels = {"left", "right"};
    q.points = {{-1.5, 0.25}, {3.0, -2.0}};
    const std::string text = write_coordinates_csv(q);
    CHECK(text == "label,x,y\nleft,-1.5,0.25\nright,3,-2\n");
    const NamedPoints back = parse_coordinates_csv(text);
    CHECK(back.labels == q.labels);
    CHECK(back.points[0].x == doctest::Approx(-1.5));
    CHECK(back.points[1].y == doctest::Approx(-2.0));
    CHECK_THROWS_AS(parse_coordinates_csv("x,y\n"), ParseError);
    CHECK_THROWS_AS(parse_coordinates_csv("label,x,y\np,1\n"), ParseError);
}

TEST_CASE("quality and similarity reports print fixed layouts") {
    CHECK(write_quality_csv({"kk", "mds"}, {1.0, 0.5}, {1.25, 2.0}) ==
          "label,monotonicity,tmr\nkk,1,1.25\nmds,0.5,2\n");
    CHECK(write_similarity_csv({"x", "y"}, {{1.0, 0.5}, {0.5, 1.0}},
                               {{0.0, 0.125}, {0.125, 0.0}}) ==
          "label,x,y\nx,1/0,0.5/0.125\ny,0.5/0.125,1/0\n");
}

TEST_CASE("name sidecars round trip and tolerate gaps") {
    const std::string text = write_names_sidecar({"Alice", "Bob"});
    CHECK(text == "0,Alice\n1,Bob\n");
    CHECK(parse_names_sidecar(text) == std::vector<std::string>{"Alice", "Bob"});
    const auto sparse = parse_names_sidecar("2,Carol\n");
    REQUIRE(sparse.size() == 3);
    CHECK(sparse[0].empty());
    CHECK(sparse[2] == "Carol");
    CHECK_THROWS_AS(parse_names_sidecar("nocomma\n"), ParseError);
}

TEST_CASE("experiment configs parse defaults and entries") {
    const std::string text =
        "# demo map\n"
        "[experiment]\n"
        "seed = 42\n"
        "m = 6\n"
        "n = 30\n"
        "metric = swap\n"
        "embedding = mds\n"
        "distances = out/d.csv\n"
        "\n"
        "[elections]\n"
        "id = compass:point=id color=#101010\n"
        "urn = urn:alpha=0.5 count=3 n=40\n"
        "mall = mallows:phi=0.3 seed=7 m=4\n";
    const ExperimentConfig config = parse_experiment_config(text);
    CHECK(config.seed == 42);
    CHECK(config.m == 6);
    CHECK(config.n == 30);
    CHECK(config.metric == "swap");
    CHECK(config.embedding == "mds");
    CHECK(config.distances_path == "out/d.csv");
    CHECK(config.trials == 10);
    REQUIRE(config.entries.size() == 3);
    CHECK(config.entries[0].label == "id");
    CHECK(config.entries[0].color == "#101010");
    CHECK(config.entries[1].count == 3);
    CHECK(config.entries[1].n == 40);
    CHECK(config.entries[2].has_seed);
    CHECK(config.entries[2].seed == 7);
    CHECK(config.entries[2].m == 4);

    const auto rows = resolve_dataset(config);
    REQUIRE(rows.size() == 5);
    CHECK(rows[0].label == "id");
    CHECK(rows[1].label == "urn_0");
    CHECK(rows[3].label == "urn_2");
    CHECK(rows[4].label == "mall");
    CHECK(rows[1].n == 40);
    CHECK(rows[4].m == 4);
    std::set<std::uint64_t> seeds;
    for (const auto& row : rows) seeds.insert(row.seed);
    CHECK(seeds.size() == rows.size());
    const auto rows_again = resolve_dataset(config);
    for (std::size_t i = 0; i < rows.size(); ++i)
        CHECK(rows[i].seed == rows_again[i].seed);
}

TEST_CASE("experiment configs reject malformed input") {
    CHECK_THROWS_AS(parse_experiment_config("[weird]\n"), ParseError);
    CHECK_THROWS_AS(parse_experiment_config("m = 5\n"), ParseError);
    CHECK_THROWS_AS(parse_experiment_config("[experiment]\nwat = 1\n"), ParseError);
    CHECK_THROWS_AS(
        parse_experiment_config("[elections]\na = ic\na = urn:alpha=1\n"), ParseError);
    CHECK_THROWS_AS(parse_experiment_config("[elections]\nbad label! = ic\n"),
                    ParseError);
    CHECK_THROWS_AS(parse_experiment_config("[experiment]\nseed = 1\n"), ParseError);
    CHECK_THROWS_AS(
        parse_experiment_config("[experiment]\nm = 0\n[elections]\na = ic\n"),
        ParseError);

    ExperimentConfig collision;
    collision.entries.push_back({"a", "ic", 2, -1, -1, false, 0, ""});
    collision.entries.push_back({"a_1", "ic", 1, -1, -1, false, 0, ""});
    CHECK_THROWS_AS(resolve_dataset(collision), ParseError);
}

TEST_CASE("svg maps render circles, labels and feature colors") {
    NamedPoints points;
    points.labels = {"alpha", "beta", "gamma<3"};
    points.points = {{0.0, 0.0}, {1.0, 0.0}, {0.5, 2.0}};

    MapStyle style;
    style.colors["alpha"] = "#123456";
    style.feature["beta"] = 0.0;
    style.feature["gamma<3"] = 1.0;
    const std::string svg = render_svg_map(points, style);

    CHECK(svg.rfind("<?xml", 0) == 0);
    CHECK(count_occurrences(svg, "<circle") == 3);
    CHECK(count_occurrences(svg, "<text") == 3);
    CHECK(svg.find("fill=\"#123456\"") != std::string::npos);
    // feature endpoints land exactly on the colormap endpoints
    CHECK(svg.find("fill=\"#2166ac\"") != std::string::npos);
    CHECK(svg.find("fill=\"#b2182b\"") != std::string::npos);
    CHECK(svg.find("gamma&lt;3") != std::string::npos);
    CHECK(svg.find("nan") == std::string::npos);
    CHECK(svg.find("</svg>") != std::string::npos);

    MapStyle quiet;
    quiet.draw_labels = false;
    const std::string bare = render_svg_map(points, quiet);
    CHECK(count_occurrences(bare, "<text") == 0);

    NamedPoints single;
    single.labels = {"only"};
    single.points = {{3.5, -1.0}};
    const std::string lone = render_svg_map(single);
    CHECK(count_occurrences(lone, "<circle") == 1);
    CHECK(lone.find("nan") == std::string::npos);

    MapStyle bad;
    bad.low_color = "red";
    bad.feature["alpha"] = 1.0;
    CHECK_THROWS_AS(render_svg_map(points, bad), std::invalid_argument);
}

}  // TEST_SUITE
