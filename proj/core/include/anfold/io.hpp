#pragma once

#include "anfold/germs.hpp"
#include "anfold/normalform.hpp"
#include "anfold/periods.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace anfold::io {

/// Malformed input file: bad JSON, missing field, or failed validation.
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Shortest representation that round-trips the exact double value.
std::string format_double(double v);

normalform::JetFamily read_jet_family(const std::string& path);
void write_jet_family(const std::string& path, const normalform::JetFamily& fam);

periods::WeightFunction read_weight(const std::string& path);
void write_weight(const std::string& path, const periods::WeightFunction& g);

germs::GermMap read_germ(const std::string& path);
void write_germ(const std::string& path, const germs::GermMap& f);

germs::SemiGlobalInvariant read_invariant(const std::string& path);
void write_invariant(const std::string& path, const germs::SemiGlobalInvariant& inv);

/// Header row plus pre-formatted cells, comma separated, one trailing newline
/// per row.  Cells must not contain commas or newlines.
void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows);

}  // namespace anfold::io
