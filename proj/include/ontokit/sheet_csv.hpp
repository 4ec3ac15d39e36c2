#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "ontokit/annotation.hpp"

namespace ontokit {

// Fixed column layout of the annotation sheet CSV.
inline constexpr std::string_view kSheetHeader =
    "label,language,gid_or_placeholder,wsr,parent_label,parent_gid,gloss,hierarchy_kind,"
    "source_iri";

// UTF-8 CSV (RFC 4180 quoting). Session metadata precedes the header as
// '# key: value' lines.
std::string export_sheet(const AnnotationSheet& sheet);
// Throws Error(MalformedRow) with line and column.
AnnotationSheet parse_sheet(std::string_view text);

std::string csv_field(std::string_view value);

}  // namespace ontokit
