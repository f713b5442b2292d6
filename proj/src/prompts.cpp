// Copyright 2026 The SEA Authors
// SPDX-License-Identifier: Apache-2.0

#include "sea/prompts.hpp"

#include "sea/error.hpp"

namespace sea {

namespace {

constexpr std::string_view kCaptionSystem =
    "You are a helpful assistant for generating image captions.";

constexpr std::string_view kCaptionUser =
    R"(Please describe this image 5 times based on the following format.
The input image is provided as a base64-encoded JPEG string.

Output template
"A black line drawing of {{text1}} on a white background."
OR
"A simple drawing of {{text1}} on a white background."

Instructions
- Replace {{text1}} with a detailed description of the image.
- Avoid vague descriptions; focus on clear details such as objects, shapes, and actions.
- The fourth and fifth descriptions must focus on unexplained details in the other descriptions, except for the main object.
- Do not include "{{}}" in the final output.
- Choose the appropriate template based on the complexity of the image.
- Separate each description with \n\n.
- Do not put any numbers or symbols in front of the descriptions.
- Do not use commas (",").)";

constexpr std::string_view kExtractGpt4o =
    R"(You are a sketch analysis expert. Your task is to extract a structured list of common visual elements that are typically included — or semantically expected — when humans sketch a given object class.

Use the object class name, along with general visual common sense and knowledge of object structure, to infer as many relevant visual components as possible.

Your goal is to produce a comprehensive and fine-grained breakdown of visual parts, including:
- core parts,
- minor or optional parts,
- functional attachments,
- repeated units,
- motion-related components (e.g., rotating blades, walking legs),
- relevant environmental or contextual elements.

Even if a part is rarely drawn, include it if it is semantically meaningful or distinctive for understanding or sketching the object, and assign lower importance_score accordingly.

This output will be used to build a commonsense database for sketch abstraction, so prioritize coverage and interpretability.

For each visual element, return the following fields:
- id: in the form <class>.<element_name>
- name: the name of the part
- shape: geometric form (e.g., circle, triangle, curve)
- position: typical relative location in the object
- count: usual number (e.g., 1, 2, or "varies")
- importance_score: integer from 1 to 5 (5 = essential; 1 = optional or rare)
- optional: true or false
- description: what it looks like and why it is relevant

Return the result strictly in the following structure:
{
  "class": "{class_name}",
  "total_elements": <number_of_elements>,
  "elements": [
    ...
  ]
}

Important general rules:
- Do not include color information.
- Do not include fictional or humorous features.
- Do not include decorative elements unless they are functionally or culturally tied to the class.
- Use consistent, interpretable IDs in the format <class>.<element_name>.
- Include both (1) frequently drawn elements and (2) structurally important elements even if rarely drawn.
- Include context or environment features only if they are logically essential to how the object is typically depicted.
- Think about what makes this class visually different from nearby classes and reflect that in part selection.
- Favor over-inclusion: include more elements with appropriately scaled importance_score.

Class: {class_name})";

constexpr std::string_view kExtractAnalyzer =
    R"(You are a Structured Visual Object Analyzer for sketches.
Your job is to output a single JSON object describing the visible parts of a sketched object class.

Hard rules (follow strictly):
1. No environment-only items.
   Do not include background or scene items that are not intrinsic parts of the object (e.g., no clouds for sun, no road or buildings for car).
2. Visible-only.
   Include only parts plausibly visible in a typical sketch; exclude hidden internals (e.g., car engine, phone mainboard).
3. Variants allowed, naming rules apply.
   Common sketch variants replacing or decorating real parts may be included with "optional": true (e.g., human_mouth on an insect).
   Do not use the word "stylized"; do not use parentheses or brackets.
   All names must be in snake_case (lowercase, digits allowed, words separated by a single underscore).
   Examples: steam_lines, wing_vein_lines, tail_fan, human_mouth.
4. Expressive lines/effects.
   Expressive effects (e.g., airflow_lines, motion_lines, steam_lines, sparkle) are excluded by default.
   They may be included only when they represent an essential and commonly used feature of the object’s sketch and must then be marked "optional": true.
   Background-only elements (ground, sky, clouds, water, etc.) must still be excluded.
5. Merge symmetric or duplicated parts.
   Merge symmetric repeats (e.g., left/right wheels, pairs of legs) into a single element (e.g., wheels, legs).
6. Coverage and granularity.
   Produce a rich but concise set of features (recommended 9-16 elements).
   Prefer coarse-to-mid granularity: split obvious appendages or facial parts (head, arms, legs) instead of using a single body.
   Consider including elements from:
   (a) anatomy or core shape,
   (b) facial features,
   (c) iconic clothing or accessories,
   (d) explicit surface, texture, or pattern marks (e.g., seed_dots, peel_lines, feather_lines, shell_pattern, fur_lines),
   (e) expressive lines only if visibly drawn.
7. Ground truth first, then variants.
   List physically correct parts first, then common variants or expressive features with "optional": true.
8. Labelability and non-ambiguous features.
   Every feature must be binary labelable (0/1) from the sketch without subjective judgment.
   Disallow vague descriptors (e.g., smooth_surface, shiny_surface).
   Do not describe the absence of texture (e.g., no_texture).
   Prefer positive, observable evidence (lines, dots, edges, explicit patterns), such as glaze_lines, seed_dots, crack_lines, slice_lines.

Output format (exact structure):
{
  "class": "<object_name>",
  "total_elements": <int>,
  "elements": [
    {
      "id": "<class_name>.<part_name>",
      "name": "<part_name>",
      "optional": <true or false>
    },
    ...
  ]
}

Additional guidance:
- "total_elements" must equal the number of objects in "elements".
- Output JSON only (no commentary outside the JSON).
- <part_name> must be snake_case; IDs must be of the form <class_name>.<part_name>.
- Ensure at least 8 elements (prefer 9-16) and reasonable coverage of anatomy, facial features, accessories, surface or pattern, and expressive lines.
- Ensure all features are 0/1 labelable and not environment-only.

Final instruction: Now, provide the structured JSON for the following object: {word}.)";

constexpr std::string_view kAuditor = R"(<|image|>
You are a strict vision auditor for sketched objects.
Target class: "{class_name}".
Valid elements for this class (use only these ids; do not add new keys):
{element_block}

Task: For each element id above, return only whether the element is depicted (true/false).
Do not return counts. If ambiguous, use false.
Return only a compact JSON object with element ids as keys and boolean values (true/false).
No prose, no code block, no extra keys.

Example schema (structure only):
{
  "element_id_1": true,
  "element_id_2": false,
  ...
})";

constexpr std::string_view kMolmo =
    R"(You are an assistant that analyzes an image of a {category} and answers in JSON format only.

Task: For the given {category} image, decide if each of the following elements is present (1) or not present (0):
[{element_list}].

Return the result strictly as a JSON object in the following format:
{
  "{file_name}": {
    {element_lines}
  }
}
Do not include explanations or extra text. Output only valid JSON.)";

constexpr std::string_view kYesNoPlain = R"(In this {class_name} image, does this sketch contain a {e}?
Answer exactly "yes" or "no".)";

constexpr std::string_view kYesNoSmolVlm = R"(<|user|>
<image>
In this {class_name} image, does this sketch contain a {e}? Answer exactly 'yes' or 'no'.
<|end|>
<|assistant|>)";

constexpr std::string_view kYesNoLlava = R"(In this {category} image, is there a {element}?
Answer Yes or No.)";

constexpr std::string_view kYesNoBlip = "In this {category} image, is there a {element}?";

}  // namespace

std::string_view caption_system_template() { return kCaptionSystem; }
std::string_view caption_user_template() { return kCaptionUser; }
std::string_view auditor_template() { return kAuditor; }
std::string_view molmo_template() { return kMolmo; }

std::string_view extraction_template(ExtractionTemplate which) {
  return which == ExtractionTemplate::Gpt4o ? kExtractGpt4o : kExtractAnalyzer;
}

std::string_view yes_no_template(YesNoTemplate which) {
  switch (which) {
    case YesNoTemplate::Plain: return kYesNoPlain;
    case YesNoTemplate::SmolVlm: return kYesNoSmolVlm;
    case YesNoTemplate::Llava: return kYesNoLlava;
    case YesNoTemplate::Blip: return kYesNoBlip;
  }
  return kYesNoPlain;
}

std::string render_template(std::string_view tmpl,
                            const std::map<std::string, std::string>& values) {
  std::string out;
  out.reserve(tmpl.size());
  std::size_t i = 0;
  while (i < tmpl.size()) {
    if (tmpl[i] == '{') {
      const auto close = tmpl.find('}', i + 1);
      if (close != std::string_view::npos) {
        const auto it = values.find(std::string(tmpl.substr(i + 1, close - i - 1)));
        if (it != values.end()) {
          out += it->second;
          i = close + 1;
          continue;
        }
      }
    }
    out += tmpl[i++];
  }
  return out;
}

std::string spoken_name(const std::string& element_name) {
  std::string s = element_name;
  for (char& c : s) {
    if (c == '_') c = ' ';
  }
  return s;
}

std::string render_extraction_prompt(ExtractionTemplate which, const std::string& class_name) {
  return render_template(extraction_template(which),
                         {{"class_name", class_name}, {"word", class_name}});
}

std::string render_auditor_prompt(const std::string& class_name, const ElementList& elements) {
  std::string block;
  for (const auto& e : elements) {
    if (!block.empty()) block += '\n';
    block += e.id;
  }
  return render_template(kAuditor, {{"class_name", class_name}, {"element_block", block}});
}

std::string render_molmo_prompt(const std::string& class_name, const std::string& file_name,
                                const ElementList& elements) {
  std::string list;
  std::string lines;
  for (const auto& e : elements) {
    if (!list.empty()) {
      list += ", ";
      lines += ",\n    ";
    }
    list += '"' + e.id + '"';
    lines += '"' + e.id + "\": <0 or 1>";
  }
  return render_template(kMolmo, {{"category", class_name},
                                  {"element_list", list},
                                  {"file_name", file_name},
                                  {"element_lines", lines}});
}

std::string render_yes_no_prompt(YesNoTemplate which, const std::string& class_name,
                                 const Element& element) {
  const std::string spoken = spoken_name(element.name);
  return render_template(yes_no_template(which), {{"class_name", class_name},
                                                  {"category", class_name},
                                                  {"e", spoken},
                                                  {"element", spoken}});
}

ExtractionTemplate extraction_template_from_string(const std::string& s) {
  if (s == "analyzer") return ExtractionTemplate::Analyzer;
  if (s == "gpt4o") return ExtractionTemplate::Gpt4o;
  throw Error(ErrorCode::InvalidArgument, "extraction_template must be analyzer or gpt4o");
}

YesNoTemplate yes_no_template_from_string(const std::string& s) {
  if (s == "plain") return YesNoTemplate::Plain;
  if (s == "smolvlm") return YesNoTemplate::SmolVlm;
  if (s == "llava") return YesNoTemplate::Llava;
  if (s == "blip") return YesNoTemplate::Blip;
  throw Error(ErrorCode::InvalidArgument,
              "yes_no_template must be plain, smolvlm, llava or blip");
}

const char* to_string(ExtractionTemplate t) {
  return t == ExtractionTemplate::Gpt4o ? "gpt4o" : "analyzer";
}

const char* to_string(YesNoTemplate t) {
  switch (t) {
    case YesNoTemplate::Plain: return "plain";
    case YesNoTemplate::SmolVlm: return "smolvlm";
    case YesNoTemplate::Llava: return "llava";
    case YesNoTemplate::Blip: return "blip";
  }
  return "plain";
}

}  // namespace sea
