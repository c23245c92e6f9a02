#include "tmhc/normalize.hpp"

#include <unicode/locid.h>
#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>
#include <unicode/utf8.h>

#include "tmhc/error.hpp"

namespace tmhc {

namespace {

const icu::Normalizer2& nfkc() {
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* instance = icu::Normalizer2::getNFKCInstance(status);
  if (U_FAILURE(status) || instance == nullptr) {
    throw Error("ICU NFKC normalizer unavailable");
  }
  return *instance;
}

icu::UnicodeString apply_nfkc(const icu::UnicodeString& in) {
  UErrorCode status = U_ZERO_ERROR;
  icu::UnicodeString out = nfkc().normalize(in, status);
  if (U_FAILURE(status)) throw Error("NFKC normalization failed");
  return out;
}

}  // namespace

std::string sanitize_utf8(std::string_view bytes) {
  std::string out;
  out.reserve(bytes.size());
  const auto* s = reinterpret_cast<const uint8_t*>(bytes.data());
  const auto length = static_cast<int32_t>(bytes.size());
  int32_t i = 0;
  while (i < length) {
    const int32_t start = i;
    UChar32 c;
    U8_NEXT(s, i, length, c);
    if (c < 0) {
      out += "\xEF\xBF\xBD";
    } else {
      out.append(bytes.substr(static_cast<std::size_t>(start), static_cast<std::size_t>(i - start)));
    }
  }
  return out;
}

std::string normalize_text(std::string_view utf8) {
  // fromUTF8 maps ill-formed input to U+FFFD
  icu::UnicodeString text = icu::UnicodeString::fromUTF8(
      icu::StringPiece(utf8.data(), static_cast<int32_t>(utf8.size())));
  text = apply_nfkc(text);
  text.toLower(icu::Locale::getRoot());
  // lowercasing can leave a string that is no longer NFKC
  text = apply_nfkc(text);

  icu::UnicodeString collapsed;
  bool pending_space = false;
  for (int32_t i = 0; i < text.length();) {
    const UChar32 c = text.char32At(i);
    i += U16_LENGTH(c);
    if (u_isUWhiteSpace(c)) {
      pending_space = !collapsed.isEmpty();
      continue;
    }
    if (pending_space) {
      collapsed.append(static_cast<UChar>(u' '));
      pending_space = false;
    }
    collapsed.append(c);
  }
  std::string out;
  collapsed.toUTF8String(out);
  return out;
}

std::vector<std::string> word_tokens(std::string_view normalized) {
  std::vector<std::string> tokens;
  const auto* s = reinterpret_cast<const uint8_t*>(normalized.data());
  const auto length = static_cast<int32_t>(normalized.size());
  int32_t i = 0;
  int32_t token_start = -1;
  while (i < length) {
    const int32_t start = i;
    UChar32 c;
    U8_NEXT(s, i, length, c);
    const bool word = c >= 0 && (u_isalnum(c) || u_hasBinaryProperty(c, UCHAR_ALPHABETIC) ||
                                 u_charType(c) == U_NON_SPACING_MARK);
    if (word) {
      if (token_start < 0) token_start = start;
    } else if (token_start >= 0) {
      tokens.emplace_back(normalized.substr(static_cast<std::size_t>(token_start),
                                            static_cast<std::size_t>(start - token_start)));
      token_start = -1;
    }
  }
  if (token_start >= 0) {
    tokens.emplace_back(normalized.substr(static_cast<std::size_t>(token_start)));
  }
  return tokens;
}

}  // namespace tmhc
