#pragma once

#include <string>

#include "relupwa/pwa.hpp"
#include "relupwa/relu_net.hpp"

namespace relupwa {

/// {"input_dim": n0, "hidden": [{"W": [[...]], "b": [...]}, ...], "output": {"W": [[...]], "b": [...]}}
/// Dimension mismatches raise ParseError pointing at the offending line.
ReluNet read_net_json(const std::string& text);
std::string write_net_json(const ReluNet& net);

/// {"domain": {"A": [[...]], "b": [...]}, "pieces": [{"A": ..., "b": ..., "u": [...], "c": real}]}
/// Vector-valued pieces use "u": [[...]] and "c": [...].
PwaFunction read_pwa_json(const std::string& text);
std::string write_pwa_json(const PwaFunction& f);

/// {"maxaffine": [{"u": [...], "c": real}, ...]}
MaxAffine read_maxaffine_json(const std::string& text);
std::string write_maxaffine_json(const MaxAffine& g);

/// {"gamma": [{"u": [...], "c": real}, ...], "eta": [...]}
DcPair read_dc_json(const std::string& text);
std::string write_dc_json(const DcPair& pair);

enum class FileKind { Net, Pwa, MaxAffine, DcPair };
FileKind detect_kind(const std::string& text);
const char* to_string(FileKind kind);

std::string read_text_file(const std::string& path);
/// Writes via a temporary file in the same directory and renames it into place.
void write_text_file_atomic(const std::string& path, const std::string& content);

}  // namespace relupwa
