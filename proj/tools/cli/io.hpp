#pragma once

#include "stabpair/energy/curve_oracle.hpp"
#include "stabpair/energy/distance.hpp"

#include <json.hpp>

#include <string>

namespace stabpair::cli {

using Json = nlohmann::ordered_json;

enum class Mode { exact, float_mode };

/// Reads inline JSON (text starting with '{' or '[') or a file; checks "schema": "v1".
Json load_document(const std::string& source);

ExactPolynomial exact_polynomial_from(const Json& j);
FloatPolynomial float_polynomial_from(const Json& j);
RepVector rep_vector_from(const Json& j, Mode mode);
Pair pair_from(const Json& j, Mode mode);
RationalCurve curve_from(const Json& j);
/// Group element of SL(N+1); exact entries when every entry is rational.
FloatMatrix sigma_from(const Json& j);
/// "1,-1" or "[1,-1]".
OnePSG lambda_from(const std::string& text);
std::vector<int> int_list_from(const std::string& text);

/// Non-finite values become the strings "inf", "-inf", "nan".
Json number(double x);
Json to_json(const GaussianRational& x);
Json to_json(const mpq_class& x);
Json to_json(const Complex& z);
Json to_json(const ExactPolynomial& p);
Json to_json(const FloatPolynomial& p);
Json to_json(const RepVector& v);
Json to_json(const FloatMatrix& m);
Json to_json(const Eigen::MatrixXcd& m);
Json to_json(const OnePSG& l);
Json to_json(const MahlerEstimate& e);
Json to_json(const StabilityCertificate& c);
Json to_json(const XPair& xp);
Json to_json(const CurveGeometryReport& r);

}  // namespace stabpair::cli
