#pragma once

#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "hodyne/common.hpp"

namespace hodyne {

enum class TagCategory { noun, verb, relpron, other };
enum class TagNumber { singular, plural, unmarked };

// A symbol is either a tag of the active tagset or one of the five reserved
// boundary symbols. Ids [0, tags.size()) are tags in file order, followed by
// START, OPEN, CLOSE, HOPEN, HCLOSE.
using SymbolId = std::uint16_t;

enum class Stage { subject, head };

struct Tag {
    std::string name;
    TagCategory category = TagCategory::other;
    TagNumber number = TagNumber::unmarked;

    bool operator==(const Tag&) const = default;
};

class Tagset {
public:
    int mode = 1;
    std::vector<Tag> tags;

    SymbolId start_symbol() const { return static_cast<SymbolId>(tags.size()); }
    SymbolId open_symbol() const { return static_cast<SymbolId>(tags.size() + 1); }
    SymbolId close_symbol() const { return static_cast<SymbolId>(tags.size() + 2); }
    SymbolId hopen_symbol() const { return static_cast<SymbolId>(tags.size() + 3); }
    SymbolId hclose_symbol() const { return static_cast<SymbolId>(tags.size() + 4); }

    bool is_tag(SymbolId s) const { return s < tags.size(); }
    bool is_boundary(SymbolId s) const { return s >= tags.size(); }

    const std::string& symbol_name(SymbolId s) const;
    // Tags only.
    std::optional<SymbolId> find_tag(std::string_view name) const;
    // Tags plus the five reserved symbols.
    std::optional<SymbolId> find_symbol(std::string_view name) const;

    TagCategory category(SymbolId s) const {
        return is_tag(s) ? tags[s].category : TagCategory::other;
    }
    TagNumber number(SymbolId s) const {
        return is_tag(s) ? tags[s].number : TagNumber::unmarked;
    }

    // Stable fingerprint of mode + tag inventory; guards net/tagset mixups.
    std::uint64_t identity_hash() const;

    // Round-trips through load_tagset.
    std::string to_text() const;

    bool operator==(const Tagset& other) const {
        return mode == other.mode && tags == other.tags;
    }

    void rebuild_index();

private:
    std::unordered_map<std::string, SymbolId> index_;
};

// Size of the symbol alphabet a stage can emit: tags + START/OPEN/CLOSE for
// the subject stage, plus HOPEN/HCLOSE for the head stage.
std::size_t symbol_count(const Tagset& tagset, Stage stage);

extern const char* const kReservedSymbolNames[5];

Tagset load_tagset(std::istream& in, const std::string& source_name);
Tagset load_tagset_file(const std::string& path);

TagCategory parse_category(std::string_view text, const std::string& source, int line);
std::string_view category_name(TagCategory c);

// Fine-grained external tag -> custom tag names, kept per mode.
struct FineTagMapping {
    std::map<std::string, std::vector<std::string>> mode1;
    std::map<std::string, std::vector<std::string>> mode2;
};

FineTagMapping load_fine_mapping(std::istream& in, const std::string& source_name,
                                 const Tagset& mode1, const Tagset& mode2);
FineTagMapping load_fine_mapping_file(const std::string& path, const Tagset& mode1,
                                      const Tagset& mode2);

// Never returns an empty set; unknown fine tags are an error naming the tag.
const std::vector<std::string>& map_fine_tag(const std::string& fine,
                                             const FineTagMapping& mapping, int mode);

}  // namespace hodyne
