#pragma once

#include "cxhyp/deformation.hpp"

#include <string>
#include <vector>

namespace cxhyp {

// --- group files -------------------------------------------------------------
//
// Text format, one generator per line after the header:
//
//   cxhyp-group v1
//   # comment
//   gen <label> <holo|anti> <18 reals>     row-major, re/im interleaved
//   amalgam 1 <labels...>                  optional decomposition block
//   amalgam 2 <labels...>
//   amalgam axis <label>
//
// or, for an HNN splitting: `hnn base <labels...>`, `hnn stable <label>`,
// `hnn axis <label>`. Factor labels must partition the declared generators.

struct GroupDocument {
    enum class Decomposition { None, Amalgam, Hnn };

    GroupPresentation group;
    Decomposition decomposition = Decomposition::None;
    std::vector<std::string> factor1; // amalgam factor 1 / HNN base
    std::vector<std::string> factor2; // amalgam factor 2 / HNN stable letter
    std::string axis_label;
};

GroupDocument parse_group_file(const std::string& text);
GroupDocument load_group_file(const std::string& path);

// Canonical serialization: parse(serialize(d)) reproduces d and a second
// serialize is byte-identical.
std::string serialize_group_file(const GroupDocument& doc);

// Builds the bending family described by the decomposition block; errors
// with invalid-input when the document has none.
BendingFamily family_from_document(const GroupDocument& doc);

// --- numbers and reports --------------------------------------------------------

// 17-significant-digit decimal (round-trips doubles exactly); -0 normalized.
std::string format_real(double x);

// Strict full-token real parser (format error on trailing characters).
double parse_real(const std::string& token);

// Ordered key = value report with unique keys and canonical float printing.
class Report {
public:
    void put(const std::string& key, const std::string& value);
    void put(const std::string& key, double value);
    void put(const std::string& key, long long value);
    void put(const std::string& key, int value) { put(key, static_cast<long long>(value)); }
    std::string str() const;

private:
    std::vector<std::pair<std::string, std::string>> rows_;
};

// --- point clouds ---------------------------------------------------------------

struct PointCloud {
    std::vector<HoroPoint> points; // finite boundary points, u = 0
    int infinity_count = 0;        // reported separately; not representable in CSV
};

// CSV `xi_re,xi_im,v`, rows sorted by (word length, letter order, coordinates).
std::string serialize_point_cloud(const LimitSample& sample);

PointCloud parse_point_cloud(const std::string& text);
PointCloud load_point_cloud(const std::string& path);

// --- rendering ------------------------------------------------------------------

// Projections of the boundary onto a drawing plane: Xi is the vertical
// projection (Re xi, Im xi), Slice the (Re xi, v) plane.
enum class RenderProjection { Xi, Slice };

struct RenderWindow {
    double x0 = -1.0, x1 = 1.0;
    double y0 = -1.0, y1 = 1.0;
    int width = 256, height = 256;
};

// Binary PPM (P6), white background, one black pixel per hit cell; points
// outside the window (and Infinity) are skipped. Bit-exact for fixed input.
std::string render_ppm(const std::vector<HoroPoint>& points, RenderProjection proj,
                       const RenderWindow& win);

// --- small parsers ----------------------------------------------------------------

// Whitespace-separated labels, `label'` for inverses, "" or "id" for the
// identity word.
Word parse_word(const GroupPresentation& G, const std::string& text);

// "value" or "first:last:count" (inclusive endpoints, count evenly spaced).
std::vector<double> parse_sweep(const std::string& text);

// "xi_re,xi_im,v" or "inf".
HoroPoint parse_boundary_point(const std::string& text);

// Word-ball radius cap: CXHYP_MAX_RADIUS when set (clamped to [0, 64]),
// otherwise 12.
int word_ball_cap();

// --- files ------------------------------------------------------------------------

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

} // namespace cxhyp
