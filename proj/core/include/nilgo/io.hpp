#ifndef NILGO_IO_HPP_
#define NILGO_IO_HPP_

#include "nilgo/go_checker.hpp"
#include "nilgo/invariants.hpp"

#include <nlohmann/json.hpp>

#include <string>
#include <string_view>

namespace nilgo {

using Json = nlohmann::ordered_json;

/**
 * Algebra format:
 *
 *   {"dim": d,
 *    "brackets": [{"i": 0, "j": 1, "coeffs": {"2": "1"}}, ...],
 *    "gram": [[...], ...]}
 *
 * Brackets are listed for i < j only. Values are numbers or decimal/fraction
 * strings; strings are read exactly. Unknown keys are ignored.
 */
MetricLieAlgebra algebra_from_json(const Json& j);
MetricLieAlgebra parse_algebra(std::string_view text);
Json algebra_to_json(const MetricLieAlgebra& l);

/// {"n": n, "operators": [n x n arrays]}
SkewOperatorSubspace subspace_from_json(const Json& j);
Json subspace_to_json(const SkewOperatorSubspace& v);

Json matrix_to_json(const Matrix& m);
Json vector_to_json(const Vector& v);
Json certificate_to_json(const GOCertificate& c);
Json polynomial_to_json(const HomogeneousPolynomial2& p);
HomogeneousPolynomial2 polynomial_from_json(const Json& j);
Json roots_to_json(const ProjectiveRootSet& r);

}  // namespace nilgo

#endif  // NILGO_IO_HPP_
