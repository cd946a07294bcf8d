#pragma once
// Prefix label -> namespace map with optional base IRI.
// Expansion and compaction for the Turtle subset and the line-based formats.

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace genome {

class PrefixMap {
public:
    // Returns true when an existing declaration was replaced (last one wins).
    bool declare(std::string prefix, std::string ns) {
        if (ns.find(':') == std::string::npos)
            throw std::invalid_argument("namespace IRI is not absolute: " + ns);
        auto [it, inserted] = entries_.insert_or_assign(std::move(prefix), std::move(ns));
        (void)it;
        return !inserted;
    }

    void set_base(std::string base) { base_ = std::move(base); }
    const std::optional<std::string>& base() const { return base_; }

    bool has(const std::string& prefix) const { return entries_.count(prefix) != 0; }

    const std::string& at(const std::string& prefix) const {
        auto it = entries_.find(prefix);
        if (it == entries_.end())
            throw std::out_of_range("undefined prefix: " + prefix);
        return it->second;
    }

    // Expand "p:local" using the declared prefixes. Throws on unknown prefix
    // or when the input has no ':' at all.
    std::string expand(std::string_view pname) const {
        auto pos = pname.find(':');
        if (pos == std::string_view::npos)
            throw std::invalid_argument("not a prefixed name: " + std::string(pname));
        std::string prefix(pname.substr(0, pos));
        std::string local(pname.substr(pos + 1));
        return at(prefix) + local;
    }

    // Longest-namespace match; empty result means no prefix applies.
    std::optional<std::pair<std::string, std::string>> compact(const std::string& iri) const {
        const std::string* best_prefix = nullptr;
        const std::string* best_ns = nullptr;
        for (const auto& [prefix, ns] : entries_) {
            if (iri.size() >= ns.size() && iri.compare(0, ns.size(), ns) == 0) {
                if (!best_ns || ns.size() > best_ns->size()) {
                    best_prefix = &prefix;
                    best_ns = &ns;
                }
            }
        }
        if (!best_ns) return std::nullopt;
        return std::make_pair(*best_prefix, iri.substr(best_ns->size()));
    }

    const std::map<std::string, std::string>& entries() const { return entries_; }
    bool empty() const { return entries_.empty() && !base_; }

private:
    std::map<std::string, std::string> entries_;
    std::optional<std::string> base_;
};

}  // namespace genome
