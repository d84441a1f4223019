#pragma once

#include <string>
#include <vector>

#include "kgex/catalog.hpp"
#include "kgex/graph.hpp"
#include "kgex/path.hpp"

namespace kgex {

/// One serialized evidence line, e.g.
///   [EXPLICIT] (movie) -[has_genre]-> (drama)
/// Entity and relation names appear verbatim; the hop-role tag keeps the
/// stratified semantics that plain linearization loses.
std::string serialize_path(const ReasoningPath& path, const KnowledgeGraph& g);

/// One line per path, in the given (selection) order, newline-terminated.
std::string serialize_paths(const std::vector<ReasoningPath>& paths,
                            const KnowledgeGraph& g);

struct ParsedEvidenceLine {
    HopRole role = HopRole::Explicit;
    std::vector<std::string> entities;
    std::vector<std::string> relations;
};

/// Inverse of serialize_path. Names must not contain the literal delimiter
/// sequences ") -[" or "]-> (". Throws ParseError on malformed lines.
ParsedEvidenceLine parse_evidence_line(const std::string& line);

/// Parses every non-empty line of an evidence block.
std::vector<ParsedEvidenceLine> parse_evidence_block(const std::string& block);

/// Resolves parsed names back to graph ids. Throws LookupError on unknown
/// names.
ReasoningPath resolve_evidence_line(const ParsedEvidenceLine& line, const KnowledgeGraph& g);

/// Discrete prompt parts in assembly order: system instruction, serialized
/// history, target descriptor, then the evidence block (the factual
/// anchors). The evidence block may be empty, which drops the section.
struct PromptBundle {
    std::string system_instruction;
    std::string history_text;
    std::string target_text;
    std::string evidence_text;

    /// Deterministic concatenation with labeled section delimiters.
    std::string text() const;
};

const char* default_system_instruction();

/// Default H_text serialization: one "- <title> (<liked features>)" line
/// per history item, oldest first.
std::string format_history_text(const UserHistory& history, const ItemCatalog& cat);

/// Default t_item descriptor: the catalog title.
std::string format_target_text(const std::string& item_id, const ItemCatalog& cat);

PromptBundle assemble_prompt(std::string system_instruction, std::string history_text,
                             std::string target_text, std::string evidence_text);

} // namespace kgex
