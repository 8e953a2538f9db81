#ifndef EXQ_IO_HPP
#define EXQ_IO_HPP

#include <stdexcept>
#include <string>
#include <vector>

#include "exq/extremal.hpp"
#include "exq/geometry.hpp"
#include "exq/odewkb.hpp"
#include "exq/quaddiff.hpp"

namespace exq {

/// Malformed input document (bad syntax, wrong shapes, missing keys).
/// Distinct from the validation exceptions thrown for well-formed files
/// that describe an invalid domain.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Reads a domain document:
///   {"contours": [{"coeffs": [[j, re, im], ...]}, ...],
///    "hole_centers": [[re, im], ...]}   (hole_centers optional)
/// First contour is the outer one. Throws ParseError on malformed input;
/// domain-validation failures propagate as std::invalid_argument.
Domain load_domain_file(const std::string& path, int samples = 512);
Domain parse_domain(const std::string& text, int samples = 512);

std::string rational_to_json(const RationalFunction& f);
RationalFunction rational_from_json(const std::string& text);

/// Full report document; check names, values, tolerances, verdict.
std::string report_to_json(const ExtremalityReport& rep);

/// Rows: contour index, t, |residual|.
std::string residuals_to_csv(const ExtremalityReport& rep);

/// Rows: arc index, kind, point index, re, im; zeros listed in the header
/// comment lines.
std::string stokes_to_csv(const StokesGraph& graph);

/// Self-contained 1024x1024 SVG: domain outline, graph arcs, zeros.
std::string stokes_to_svg(const StokesGraph& graph, const Domain& dom);

/// Rows: eps, sup relative error.
std::string wkb_rows_to_csv(const std::vector<WKBErrorRow>& rows);

/// Fixed-format float used by every emitter (deterministic output).
std::string fmt_double(double x);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace exq

#endif
