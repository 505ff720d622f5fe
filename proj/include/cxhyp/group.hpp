#pragma once

#include "cxhyp/heisenberg.hpp"

#include <string>
#include <utility>
#include <vector>

namespace cxhyp {

// Words are letter sequences over 0..2n-1: letter i < n is generator i,
// letter n+i its formal inverse. Application order is left to right:
// the word "a b" acts as z -> a(b(z)).
using Word = std::vector<int>;

struct GroupPresentation {
    std::vector<std::string> labels;
    std::vector<Isometry> gens;
    std::vector<Isometry> gen_inverses; // validated against gens on build

    static GroupPresentation from_generators(std::vector<std::string> labels,
                                             std::vector<Isometry> gens);

    int rank() const { return static_cast<int>(gens.size()); }
    int letter_count() const { return 2 * rank(); }
    static int inverse_letter(int letter, int rank) { return (letter + rank) % (2 * rank); }
    const Isometry& letter(int i) const;
    std::string letter_label(int i) const; // inverse letters get a ' suffix
};

Isometry evaluate_word(const GroupPresentation& G, const Word& w);
std::string word_to_string(const GroupPresentation& G, const Word& w);

struct WordBallEntry {
    Word word;
    Isometry g;
};

// Breadth-first enumeration of freely reduced words of length <= R,
// deduplicated as group elements at matrix resolution 1e-8 (the shortest
// word, first in enumeration order, represents each element).
std::vector<WordBallEntry> word_ball(const GroupPresentation& G, int R);

struct OrbitCloud {
    HoroPoint base;
    std::vector<Word> words;
    std::vector<HoroPoint> points; // parallel to words
    int radius = 0;
};

// Orbit of `base` under the radius-R ball, deduplicated in the Cygan metric.
OrbitCloud orbit_cloud(const GroupPresentation& G, const HoroPoint& base, int R,
                       double dedup = 1e-6);

struct LimitSample {
    std::vector<HoroPoint> points; // finite boundary points
    std::vector<Word> words;       // a word whose fixed point each entry is
    bool has_infinity = false;
    Word infinity_word;
    int ball_words = 0;     // size of the enumerated word ball
    int raw_candidates = 0; // fixed-point candidates before deduplication
};

// Attractive and repelling fixed points of every loxodromic word in the
// radius-R ball, deduplicated at Cygan resolution 1e-6; Infinity is kept as
// a separate flag since it has no Cygan coordinates.
LimitSample limit_set_sample(const GroupPresentation& G, int R);

// Radius-R Dirichlet certificate: d(z,y) < d(z, g y) strictly for every
// nonidentity ball word (a finite check, not a global statement).
bool dirichlet_membership(const HoroPoint& z, const HoroPoint& y,
                          const GroupPresentation& G, int R);

// Tube-width test sinh(l/4) sinh(delta/2) <= 1/2.
bool collar_check(double l, double delta);

struct GrowthRow {
    int length = 0;
    int count = 0;
    double min_d = 0.0;
    double max_d = 0.0;
};

struct GrowthReport {
    std::vector<GrowthRow> rows; // one per populated word length 1..R
    double k_upper = 0.0;        // smallest K with max_d(n) <= K n over rows
    double log_offset = 0.0;     // least-squares a in min_d(n) ~ a + 2 ln n
    double log_residual = 0.0;   // relative rms residual of that envelope
};

GrowthReport growth_diagnostic(const GroupPresentation& G, int R, const HoroPoint& basepoint);

// Invariant set of the cusp stabilizer in the frame where the cusp sits at
// Infinity: a vertical line, a horizontal line, or the whole boundary.
enum class CuspModel { VerticalLine, HorizontalLine, FullBoundary };

enum class CuspVerdict { Inside, Outside, Violated };

struct CuspResult {
    CuspVerdict verdict = CuspVerdict::Outside;
    Word violating_word; // set for Violated
};

// Standard cusp neighborhood test at radius r about the parabolic point p:
// x is Inside when the inversion swapping p and Infinity pushes it to
// distance >= 1/r from the model set; Violated(g) reports a ball word moving
// a sampled inside point back inside (precise-invariance failure at radius R).
CuspResult cusp_neighborhood_test(const HoroPoint& p, const HoroPoint& x, double r,
                                  const GroupPresentation& G, int R, CuspModel model);

// Ball words displacing x by less than eps (identity excluded); empty output
// certifies x clear of the radius-R thin part proxy.
std::vector<Word> margulis_test(const HoroPoint& x, const GroupPresentation& G, int R,
                                double eps);

struct FloydCluster {
    std::vector<Word> words;  // sphere-R words in the cluster (canonical order)
    HoroPoint orbit_point;    // g(base) for the representative word
    HoroPoint nearest_limit;  // closest entry of limit_set_sample
    double limit_distance = 0.0;
    bool nearest_is_infinity = false;
};

struct FloydReport {
    std::vector<FloydCluster> clusters;
    double scale = 0.0;          // clustering scale actually used
    bool equivariant = true;     // generator action respects the clustering
};

// Clusters of the word-length-R sphere under the path metric with edge
// weights min(1/|a|^2, 1/|b|^2), paired with orbit points near the limit set.
// theta <= 0 selects the default scale 4/R^2.
FloydReport floyd_boundary_samples(const GroupPresentation& G, int R, double theta = 0.0);

struct BoundaryMapReport {
    std::vector<Word> words;          // loxodromic words indexing the pairs
    std::vector<HoroPoint> source;    // attractive fixed points in G
    std::vector<HoroPoint> image;     // attractive fixed points of paired words in H
    // modulus-of-continuity table: (source Cygan distance, image Cygan
    // distance) for the closest sampled pairs, sorted by source distance
    std::vector<std::pair<double, double>> modulus;
};

// Samples the equivariant boundary map G -> H induced by a generator pairing:
// for each loxodromic word g of the ball, pairs fix+(g) with fix+(phi(g)).
// Throws invalid-input naming the first word whose type is not preserved.
BoundaryMapReport boundary_map_samples(const GroupPresentation& G, const GroupPresentation& H,
                                       const std::vector<int>& pairing, int R);

struct BoxDimensionResult {
    double slope = 0.0;
    double residual = 0.0; // rms residual of the log-log least squares fit
    std::vector<std::pair<double, long>> counts; // (scale, box count)
};

// Box-counting dimension estimate in the Cygan metric: grid cells are
// eps x eps in xi and eps^2 in v, matching the metric's anisotropy.
BoxDimensionResult box_dimension(const LimitSample& sample, const std::vector<double>& scales);

} // namespace cxhyp
