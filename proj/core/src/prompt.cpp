#include "kgex/prompt.hpp"

#include <sstream>

#include "kgex/error.hpp"
#include "kgex/text.hpp"

namespace kgex {

std::string serialize_path(const ReasoningPath& path, const KnowledgeGraph& g) {
    if (path.entities.size() != path.relations.size() + 1 || path.entities.empty()) {
        throw Error("malformed reasoning path");
    }
    std::string out = "[";
    out += hop_role_tag(path.role());
    out += "] (";
    out += g.entity_name(path.entities.front());
    out += ")";
    for (size_t i = 0; i < path.relations.size(); ++i) {
        out += " -[";
        out += g.relation_name(path.relations[i]);
        out += "]-> (";
        out += g.entity_name(path.entities[i + 1]);
        out += ")";
    }
    return out;
}

std::string serialize_paths(const std::vector<ReasoningPath>& paths,
                            const KnowledgeGraph& g) {
    std::string out;
    for (const auto& p : paths) {
        out += serialize_path(p, g);
        out += '\n';
    }
    return out;
}

namespace {

HopRole role_from_tag(std::string_view tag) {
    if (tag == "EXPLICIT") return HopRole::Explicit;
    if (tag == "RELATIONAL") return HopRole::Relational;
    if (tag == "IMPLICIT") return HopRole::Implicit;
    throw ParseError("unknown hop-role tag: " + std::string(tag));
}

} // namespace

ParsedEvidenceLine parse_evidence_line(const std::string& raw) {
    std::string_view line = trim(raw);
    ParsedEvidenceLine out;
    if (line.empty() || line.front() != '[') {
        throw ParseError("evidence line must start with a [TAG]: " + std::string(line));
    }
    size_t tag_end = line.find(']');
    if (tag_end == std::string_view::npos) {
        throw ParseError("unterminated hop-role tag");
    }
    out.role = role_from_tag(line.substr(1, tag_end - 1));
    line.remove_prefix(tag_end + 1);
    line = trim(line);

    if (line.size() < 2 || line.front() != '(' || line.back() != ')') {
        throw ParseError("evidence line body must be parenthesized entities");
    }
    // Body grammar: (e0) -[r1]-> (e1) -[r2]-> (e2) ...
    line.remove_prefix(1);
    line.remove_suffix(1);
    constexpr std::string_view kEdgeSep = ") -[";
    constexpr std::string_view kNodeSep = "]-> (";
    bool expect_entity = true;
    while (true) {
        if (expect_entity) {
            size_t pos = line.find(kEdgeSep);
            if (pos == std::string_view::npos) {
                out.entities.emplace_back(line);
                break;
            }
            out.entities.emplace_back(line.substr(0, pos));
            line.remove_prefix(pos + kEdgeSep.size());
        } else {
            size_t pos = line.find(kNodeSep);
            if (pos == std::string_view::npos) {
                throw ParseError("evidence line relation is not followed by an entity");
            }
            out.relations.emplace_back(line.substr(0, pos));
            line.remove_prefix(pos + kNodeSep.size());
        }
        expect_entity = !expect_entity;
    }
    if (out.entities.size() != out.relations.size() + 1) {
        throw ParseError("evidence line does not alternate entities and relations");
    }
    size_t expected_hops = static_cast<size_t>(out.role);
    if (out.relations.size() != expected_hops) {
        throw ParseError("hop-role tag does not match hop count");
    }
    return out;
}

std::vector<ParsedEvidenceLine> parse_evidence_block(const std::string& block) {
    std::vector<ParsedEvidenceLine> out;
    std::istringstream ss(block);
    std::string line;
    while (std::getline(ss, line)) {
        if (trim(line).empty()) continue;
        out.push_back(parse_evidence_line(line));
    }
    return out;
}

ReasoningPath resolve_evidence_line(const ParsedEvidenceLine& line, const KnowledgeGraph& g) {
    ReasoningPath p;
    for (const auto& name : line.entities) {
        auto id = g.find_entity(name);
        if (!id) throw LookupError("unknown entity in evidence: " + name);
        p.entities.push_back(*id);
    }
    for (const auto& name : line.relations) {
        auto id = g.find_relation(name);
        if (!id) throw LookupError("unknown relation in evidence: " + name);
        p.relations.push_back(*id);
    }
    return p;
}

const char* default_system_instruction() {
    return "You are a recommendation assistant. Using only the evidence paths and the "
           "user's history below, write one short explanation of why the target item "
           "fits this user. Mention only attributes that appear in the evidence.";
}

std::string format_history_text(const UserHistory& history, const ItemCatalog& cat) {
    std::string out;
    for (const auto& hi : history.items) {
        out += "- ";
        out += cat.get(hi.item_id).title;
        std::string liked;
        for (const auto& q : hi.features) {
            if (q.polarity <= 0) continue;
            if (!liked.empty()) liked += ", ";
            liked += q.feature;
        }
        if (!liked.empty()) {
            out += " (liked: " + liked + ")";
        }
        out += '\n';
    }
    return out;
}

std::string format_target_text(const std::string& item_id, const ItemCatalog& cat) {
    return cat.get(item_id).title;
}

PromptBundle assemble_prompt(std::string system_instruction, std::string history_text,
                             std::string target_text, std::string evidence_text) {
    if (trim(system_instruction).empty()) throw Error("system instruction must be non-empty");
    if (trim(history_text).empty()) throw Error("history text must be non-empty");
    if (trim(target_text).empty()) throw Error("target text must be non-empty");
    return PromptBundle{std::move(system_instruction), std::move(history_text),
                        std::move(target_text), std::move(evidence_text)};
}

std::string PromptBundle::text() const {
    std::string out;
    out += "### System\n";
    out += system_instruction;
    out += "\n\n### History\n";
    out += history_text;
    if (!out.empty() && out.back() != '\n') out += '\n';
    out += "\n### Target\n";
    out += target_text;
    out += '\n';
    if (!evidence_text.empty()) {
        out += "\n### Evidence\n";
        out += evidence_text;
        if (out.back() != '\n') out += '\n';
    }
    return out;
}

} // namespace kgex
