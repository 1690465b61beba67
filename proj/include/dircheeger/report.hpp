#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "json.hpp"

#include "dircheeger/circulation.hpp"
#include "dircheeger/expansion.hpp"
#include "dircheeger/mixing.hpp"
#include "dircheeger/rounding.hpp"
#include "dircheeger/spectral.hpp"

namespace dircheeger {

using Json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kVersion = "0.1.0";

/// Finite doubles as numbers; infinities as "inf" / "-inf", NaN as "nan".
Json number(double x);
Json number(const std::optional<double>& x);
/// Integer step count, or "inf".
Json steps(const Steps& t);

/// 64-bit FNV-1a of the bytes, as 16 lowercase hex digits.
std::string fnv1a_hex(std::string_view bytes);

Json to_json(const Cut& cut);
/// Witnesses are included only on request; they can be large.
Json to_json(const SpectralBracket& b, bool witnesses = false);
Json to_json(const CutResult& r);
Json to_json(const MixingBounds& b);
Json to_json(const FastestMixing& fm);
Json to_json(const Matrix& m);

/// {schema, command, input_digest, parameters, result, timing, version}.
Json envelope(const std::string& command, const std::string& input_digest, Json parameters, Json result,
              double seconds);

/// The envelope serialized without its timing field; equal inputs and seed
/// give equal payloads.
std::string payload(const Json& envelope);

}  // namespace dircheeger
