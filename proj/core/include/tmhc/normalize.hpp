#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace tmhc {

/// Canonical form used for every construct comparison: NFKC compatibility
/// normalization, lowercase, runs of whitespace collapsed to one ASCII space,
/// leading and trailing whitespace removed. Invalid UTF-8 is replaced with
/// U+FFFD. Idempotent.
std::string normalize_text(std::string_view utf8);

/// Decodes UTF-8 leniently; ill-formed sequences become U+FFFD.
std::string sanitize_utf8(std::string_view bytes);

/// Splits already-normalized text into maximal runs of letters and digits.
/// Everything else (whitespace, punctuation, symbols) separates tokens.
std::vector<std::string> word_tokens(std::string_view normalized);

}  // namespace tmhc
