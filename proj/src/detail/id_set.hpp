#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace packlab::detail {

// Open-addressing set of 32-bit ids. Hashing and equality are supplied per call so
// the keys themselves live in external storage.
class IdSet {
public:
    static constexpr std::uint32_t empty = 0xffffffffu;

    IdSet() : slots_(1024, empty), hashes_(1024, 0) {}

    std::size_t size() const { return size_; }

    // Returns the stored id equal to the probe, or `empty`.
    template <class Eq>
    std::uint32_t find(std::uint64_t hash, Eq&& eq) const {
        std::size_t mask = slots_.size() - 1;
        for (std::size_t i = hash & mask;; i = (i + 1) & mask) {
            std::uint32_t id = slots_[i];
            if (id == empty) return empty;
            if (hashes_[i] == hash && eq(id)) return id;
        }
    }

    // Caller guarantees the key is absent.
    void insert(std::uint64_t hash, std::uint32_t id) {
        if ((size_ + 1) * 2 > slots_.size()) grow();
        place(hash, id);
        ++size_;
    }

private:
    void place(std::uint64_t hash, std::uint32_t id) {
        std::size_t mask = slots_.size() - 1;
        std::size_t i = hash & mask;
        while (slots_[i] != empty) i = (i + 1) & mask;
        slots_[i] = id;
        hashes_[i] = hash;
    }

    void grow() {
        std::vector<std::uint32_t> old_slots(slots_.size() * 2, empty);
        std::vector<std::uint64_t> old_hashes(slots_.size() * 2, 0);
        old_slots.swap(slots_);
        old_hashes.swap(hashes_);
        for (std::size_t i = 0; i < old_slots.size(); ++i)
            if (old_slots[i] != empty) place(old_hashes[i], old_slots[i]);
    }

    std::vector<std::uint32_t> slots_;
    std::vector<std::uint64_t> hashes_;
    std::size_t size_ = 0;
};

}  // namespace packlab::detail
