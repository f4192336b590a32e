#pragma once

// Small named-value store for lemma reports and proof-trace steps.  Inline
// fixed capacity: the lemma sweeps build hundreds of millions of reports,
// so report construction must not allocate.  Keys are string literals.

#include <array>
#include <cstddef>
#include <optional>
#include <string_view>

#include "cubesum/u128.hpp"

namespace cubesum {

class ValueMap {
public:
    struct Entry {
        const char* key;
        U128 value;
    };
    static constexpr std::size_t kCapacity = 12;

    ValueMap() = default;
    ValueMap(std::initializer_list<Entry> init) {
        for (const Entry& e : init) set(e.key, e.value);
    }

    void set(const char* key, U128 value) {
        if (size_ == kCapacity) throw internal_inconsistency_error("ValueMap capacity exceeded");
        entries_[size_++] = {key, value};
    }

    std::optional<U128> get(std::string_view key) const {
        for (std::size_t i = 0; i < size_; ++i)
            if (key == entries_[i].key) return entries_[i].value;
        return std::nullopt;
    }

    std::size_t size() const { return size_; }
    const Entry* begin() const { return entries_.data(); }
    const Entry* end() const { return entries_.data() + size_; }

private:
    std::array<Entry, kCapacity> entries_{};
    std::size_t size_ = 0;
};

}  // namespace cubesum
