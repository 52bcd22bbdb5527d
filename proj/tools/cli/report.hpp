#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "dkit/spectrum.hpp"
#include "dkit/types.hpp"

namespace dkit::cli {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "discrepancy-kit/1";

/// Serializes with every float printed as %.17g (non-finite as null) and
/// two-space indentation. Key order is insertion order.
std::string dump(const Json& j);

Json to_json(Complex z);
Json to_json(const ComplexMatrix& m);
Json to_json(const SpectrumVector& v);
Json to_json(const std::vector<double>& v);
Json to_json(const std::vector<Complex>& v);

std::string hex_digest(std::uint64_t d);

}  // namespace dkit::cli
