#pragma once

// JSON reading and writing for lattices, isometries, generator sets and
// verdicts. Integers are exact: numbers that do not fit in 64 bits are
// written as decimal strings and accepted back in either form.

#include "hyperlat/forms.hpp"
#include "hyperlat/groups.hpp"
#include "hyperlat/k3.hpp"

#include <json.hpp>

#include <string>

namespace hyperlat::json_io {

using Json = nlohmann::json;

/// Parses text; throws MalformedInput with the byte position or JSON path.
Json parse(const std::string& text, const std::string& source);
Json read_file(const std::string& path);

Integer integer_from(const Json& j, const std::string& path);
IntVector vector_from(const Json& j, const std::string& path);
IntMatrix matrix_from(const Json& j, const std::string& path);

/// {"gram": [[...]], "labels": [...]}.
GramLattice lattice_from(const Json& j);
/// {"matrix": [[...]]}.
IntMatrix isometry_matrix_from(const Json& j);
/// {"generators": [{"matrix": ...}, ...]}.
std::vector<IntMatrix> generator_matrices_from(const Json& j);

Json to_json(const Integer& v);
Json to_json(const Rational& v);  // string "p/q", or an integer
Json to_json(const IntVector& v);
Json to_json(const IntMatrix& m);
Json to_json(const std::vector<IntVector>& vs);
Json lattice_json(const GramLattice& l);

/// Rounds to `digits` significant digits so that dumps are stable.
double display(double x, int digits);
Json display(const std::vector<double>& xs, int digits);

Json to_json(const CongruenceCertificate& c);
Json to_json(const AnisotropyCertificate& c);
Json to_json(const Certificate& c);
Json to_json(const SearchVerdict& v);
Json to_json(const IsotropyVerdict& v);
Json to_json(const LatticeVerdict& v);
Json to_json(const FibrationVerdict& v);
Json to_json(const EntropyReport& r, int digits);
Json to_json(const CriterionReport& r, int digits);

}  // namespace hyperlat::json_io
