#pragma once

namespace mimogan {

// Training allocates and frees many activation buffers of a few hundred KB
// per batch. glibc serves those with mmap by default and returns them to the
// kernel right away, so every batch pays for fresh page faults. This raises
// the mmap and trim thresholds so the buffers are recycled from the heap.
// Process-wide; call once from main(). No-op on other C libraries.
void tune_allocator() noexcept;

}  // namespace mimogan
