// Copyright 2026 The SEA Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <string>
#include <string_view>

#include "sea/dataset.hpp"

namespace sea {

enum class ExtractionTemplate { Analyzer, Gpt4o };
enum class YesNoTemplate { Plain, SmolVlm, Llava, Blip };

// Raw templates. Placeholders are {name}; every other brace is literal.
std::string_view caption_system_template();
std::string_view caption_user_template();
std::string_view extraction_template(ExtractionTemplate which);
std::string_view auditor_template();
std::string_view molmo_template();
std::string_view yes_no_template(YesNoTemplate which);

/// Single left-to-right pass: each {key} with a known key is replaced, and
/// substituted text is never rescanned. Unknown {...} runs stay verbatim.
std::string render_template(std::string_view tmpl,
                            const std::map<std::string, std::string>& values);

/// Element name as spoken in a question: underscores become spaces.
std::string spoken_name(const std::string& element_name);

std::string render_extraction_prompt(ExtractionTemplate which, const std::string& class_name);
std::string render_auditor_prompt(const std::string& class_name, const ElementList& elements);
std::string render_molmo_prompt(const std::string& class_name, const std::string& file_name,
                                const ElementList& elements);
std::string render_yes_no_prompt(YesNoTemplate which, const std::string& class_name,
                                 const Element& element);

ExtractionTemplate extraction_template_from_string(const std::string& s);
YesNoTemplate yes_no_template_from_string(const std::string& s);
const char* to_string(ExtractionTemplate t);
const char* to_string(YesNoTemplate t);

}  // namespace sea
