#pragma once

#include <string>
#include <vector>

#include "homax/field.hpp"
#include "homax/space.hpp"

namespace homax {

/// Space JSON schema:
///   { "points": [ids...], "metric": "matrix"|"abs1d"|"circle",
///     "matrix": [row-major distances]   (matrix only)
///     "coords": [...],                  (abs1d, circle)
///     "exponent": e,                    (circle only)
///     "masses": [...] }
/// Loading re-validates through the Space constructors, so a tampered file
/// fails with the usual validation errors; I/O and parse problems raise
/// IoError.
Space load_space_json(const std::string& path);
void save_space_json(const Space& s, const std::string& path);

/// Field files are a bare JSON array of values, one per point in order.
FieldFunction load_field_json(const std::string& path, int expected_n);
void save_field_json(const FieldFunction& f, const std::string& path);

/// CSV with a header row, '.'-decimal, 17 significant digits.
void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);

/// %.17g rendering used for all CSV numbers.
std::string format_g17(double v);

}  // namespace homax
