#pragma once

#include <string>
#include <utility>
#include <vector>

#include "schurcm/errors.hpp"
#include "schurcm/linalg.hpp"

namespace schurcm {

struct Party {
    std::string label;
    int modes = 0;
};

// Ordered list of (party label, mode count). Quadratures are interleaved,
// (x1, p1, x2, p2, ...), so a party with m modes owns 2m consecutive
// rows/columns starting at twice its mode offset.
class ModePartition {
public:
    ModePartition() = default;

    explicit ModePartition(std::vector<Party> parties) : parties_(std::move(parties)) {
        for (std::size_t i = 0; i < parties_.size(); ++i) {
            if (parties_[i].label.empty())
                throw UnknownPartyError("party label must be nonempty");
            if (parties_[i].modes <= 0)
                throw DimensionMismatchError("party '" + parties_[i].label +
                                             "' must have a positive mode count");
            for (std::size_t j = 0; j < i; ++j)
                if (parties_[j].label == parties_[i].label)
                    throw LabelClashError("duplicate party label '" + parties_[i].label + "'");
        }
    }

    ModePartition(std::initializer_list<Party> parties)
        : ModePartition(std::vector<Party>(parties)) {}

    const std::vector<Party>& parties() const { return parties_; }
    std::size_t n_parties() const { return parties_.size(); }

    int n_modes() const {
        int n = 0;
        for (const Party& p : parties_) n += p.modes;
        return n;
    }

    Index dim() const { return 2 * static_cast<Index>(n_modes()); }

    bool has_party(const std::string& label) const {
        for (const Party& p : parties_)
            if (p.label == label) return true;
        return false;
    }

    int party_modes(const std::string& label) const {
        for (const Party& p : parties_)
            if (p.label == label) return p.modes;
        throw UnknownPartyError("unknown party '" + label + "'");
    }

    // First mode index of the party.
    int mode_offset(const std::string& label) const {
        int off = 0;
        for (const Party& p : parties_) {
            if (p.label == label) return off;
            off += p.modes;
        }
        throw UnknownPartyError("unknown party '" + label + "'");
    }

    // Row/column indices owned by the party, ascending.
    IndexSet party_indices(const std::string& label) const {
        const int off = 2 * mode_offset(label);
        const int len = 2 * party_modes(label);
        IndexSet out(static_cast<std::size_t>(len));
        for (int i = 0; i < len; ++i) out[static_cast<std::size_t>(i)] = off + i;
        return out;
    }

    bool operator==(const ModePartition& other) const {
        if (parties_.size() != other.parties_.size()) return false;
        for (std::size_t i = 0; i < parties_.size(); ++i)
            if (parties_[i].label != other.parties_[i].label ||
                parties_[i].modes != other.parties_[i].modes)
                return false;
        return true;
    }

private:
    std::vector<Party> parties_;
};

// Names the subsystem(s) an operation acts on.
struct PartySelector {
    std::vector<std::string> labels;

    PartySelector() = default;
    PartySelector(std::initializer_list<std::string> l) : labels(l) {}
    explicit PartySelector(std::vector<std::string> l) : labels(std::move(l)) {}
};

inline void validate_selector(const ModePartition& partition, const PartySelector& sel) {
    if (sel.labels.empty()) throw UnknownPartyError("selector is empty");
    for (std::size_t i = 0; i < sel.labels.size(); ++i) {
        if (!partition.has_party(sel.labels[i]))
            throw UnknownPartyError("unknown party '" + sel.labels[i] + "'");
        for (std::size_t j = 0; j < i; ++j)
            if (sel.labels[j] == sel.labels[i])
                throw UnknownPartyError("duplicate party '" + sel.labels[i] + "' in selector");
    }
}

// Row/column indices of the selected parties, in the partition's own party
// order (selector order does not matter).
inline IndexSet indices_for(const ModePartition& partition, const PartySelector& sel) {
    validate_selector(partition, sel);
    IndexSet out;
    for (const Party& p : partition.parties()) {
        bool selected = false;
        for (const std::string& l : sel.labels)
            if (l == p.label) selected = true;
        if (!selected) continue;
        const IndexSet idx = partition.party_indices(p.label);
        out.insert(out.end(), idx.begin(), idx.end());
    }
    return out;
}

// Partition restricted to the selected parties, preserving original order.
inline ModePartition restrict_to(const ModePartition& partition, const PartySelector& sel) {
    validate_selector(partition, sel);
    std::vector<Party> kept;
    for (const Party& p : partition.parties())
        for (const std::string& l : sel.labels)
            if (l == p.label) kept.push_back(p);
    return ModePartition(kept);
}

// Partition with the selected parties removed.
inline ModePartition drop_parties(const ModePartition& partition, const PartySelector& sel) {
    validate_selector(partition, sel);
    std::vector<Party> kept;
    for (const Party& p : partition.parties()) {
        bool selected = false;
        for (const std::string& l : sel.labels)
            if (l == p.label) selected = true;
        if (!selected) kept.push_back(p);
    }
    if (kept.empty()) throw UnknownPartyError("selector removes every party");
    return ModePartition(kept);
}

inline PartySelector complement_selector(const ModePartition& partition,
                                         const PartySelector& sel) {
    validate_selector(partition, sel);
    std::vector<std::string> labels;
    for (const Party& p : partition.parties()) {
        bool selected = false;
        for (const std::string& l : sel.labels)
            if (l == p.label) selected = true;
        if (!selected) labels.push_back(p.label);
    }
    return PartySelector(std::move(labels));
}

}  // namespace schurcm
