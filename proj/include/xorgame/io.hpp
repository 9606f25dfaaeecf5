#pragma once

#include <filesystem>
#include <string>

#include "json.hpp"
#include "xorgame/game.hpp"
#include "xorgame/gram_sdp.hpp"
#include "xorgame/qip2.hpp"
#include "xorgame/tsirelson.hpp"

namespace xorgame::io {

using Json = nlohmann::ordered_json;

// Readers throw Error(ParseError) on malformed documents and
// Error(DimensionMismatch) when arrays disagree with declared counts. They do
// not run domain validation.

Json to_json(const XorGame& game);
XorGame game_from_json(const Json& j);

Json to_json(const ClassicalStrategy& strategy);
ClassicalStrategy classical_strategy_from_json(const Json& j);

Json to_json(const VectorStrategy& strategy);
VectorStrategy vector_strategy_from_json(const Json& j);

/// psi as [re, im] pairs, observables as row-major [re, im] matrices.
Json to_json(const EntangledStrategy& strategy);
EntangledStrategy entangled_strategy_from_json(const Json& j);

Json to_json(const GameReport& report);
Json to_json(const ProtocolRun& run);

/// Parses text; syntax errors become Error(ParseError).
Json parse(const std::string& text);

/// Two-space indented, trailing newline.
std::string dump(const Json& j);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& text);

XorGame load_game(const std::filesystem::path& path);

}  // namespace xorgame::io
