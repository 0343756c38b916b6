#pragma once

#include <optional>
#include <string>

#include "blb/datum.hpp"
#include "blb/visual.hpp"

namespace blb {

/// Parsed datum document: the datum plus the optional analysis inputs that may
/// ride along in the same file.
struct DatumDocument {
  Datum datum;
  std::optional<std::vector<SpdMatrix>> regs;
  std::optional<SpdMatrix> loc;
  std::optional<std::vector<double>> alphas;
  std::optional<double> beta;
};

/// JSON document with keys: ambient_dim, maps ([{rows, cols, entries}],
/// entries row-major), weights, and optional regs, loc, alphas, beta.
/// Malformed input raises ParseError naming the offending field.
DatumDocument read_datum_file(const std::string& path);
DatumDocument parse_datum_json(const std::string& text, const std::string& origin);

/// Plain text: first line "d n", then n lines of d coordinates.
PointCloud read_cloud_file(const std::string& path);

/// Plain text: first line "d k", then k rows of d coordinates spanning the
/// subspace (orthonormalized on load).
Subspace read_frame_file(const std::string& path);

}  // namespace blb
