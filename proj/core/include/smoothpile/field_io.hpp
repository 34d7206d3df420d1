#pragma once

#include <iosfwd>
#include <string>

#include "smoothpile/field.hpp"

namespace smoothpile {

/// Line-oriented dump: header "domain <kind> <params>", then one
/// "x y value" line per vertex in storage order. Integers only.
void write_field(const IntegerField& f, std::ostream& os);
std::string field_to_string(const IntegerField& f);
void save_field(const IntegerField& f, const std::string& path);

/// Parse a dump produced by write_field. Box and cylinder domains only.
IntegerField read_field(std::istream& is);
IntegerField load_field(const std::string& path);

/// Dense grid CSV, one row per y from y1 down to y0.
void write_csv(const IntegerField& f, std::ostream& os);
void save_csv(const IntegerField& f, const std::string& path);

}  // namespace smoothpile
