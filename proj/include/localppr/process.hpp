#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "localppr/problem.hpp"

namespace localppr {

// FIFO of active nodes with an epoch marker. Starts as [*] at epoch -1; the
// first dequeue of the marker opens epoch 0.
class EvolvingQueue {
 public:
  static constexpr NodeId kSentinel = std::numeric_limits<NodeId>::max();

  enum class Kind { Node, EpochBoundary, Exhausted };
  struct Event {
    Kind kind;
    NodeId node = kSentinel;  // for Node
    std::int64_t epoch = -1;  // epoch now open
  };

  explicit EvolvingQueue(std::size_t n);

  // enqueue unless already queued; returns whether it was added
  bool push(NodeId v);
  bool push_if_active(const Problem& p, std::span<const double> r, NodeId v) {
    return !in_queue_[v] && p.active(r, v) && push(v);
  }

  Event next();

  // Pops the real nodes ahead of the marker (the rest of the current epoch).
  void drain_epoch(std::vector<NodeId>& out);

  bool contains(NodeId v) const { return in_queue_[v] != 0; }
  std::size_t size() const noexcept { return count_ - 1; }  // real nodes only
  std::int64_t epoch() const noexcept { return epoch_; }
  // queue contents front to back, marker included
  std::vector<NodeId> contents() const;

 private:
  void enqueue(NodeId v);
  NodeId dequeue();

  std::vector<NodeId> ring_;
  std::vector<std::uint8_t> in_queue_;
  std::size_t head_ = 0;
  std::size_t count_ = 0;
  std::int64_t epoch_ = -1;
};

struct EpochRecord {
  std::int64_t t = 0;
  std::uint64_t vol = 0;
  std::uint64_t size = 0;
  double gamma = 0.0;
  double l1 = 0.0;  // ||r~||_1 at epoch start
  double l2 = 0.0;  // ||r~||_2 at epoch start
  std::uint64_t cum_ops = 0;
  // ||r||_2 / (delta_{1:t} ||r0||_2), only filled by the Chebyshev solver
  double cheb_ratio = std::numeric_limits<double>::quiet_NaN();
};

class EpochTrace {
 public:
  void begin_epoch(double l1, double l2);
  // |value| is the scaled residual the node had when it was processed
  void record_processed(std::uint32_t degree, double value);
  void end_epoch();
  void set_cheb_ratio(double v);

  void set_final(double l1, double l2) {
    final_l1_ = l1;
    final_l2_ = l2;
  }
  double final_l1() const noexcept { return final_l1_; }
  double final_l2() const noexcept { return final_l2_; }

  bool open() const noexcept { return open_; }
  const std::vector<EpochRecord>& records() const noexcept { return records_; }
  std::size_t epochs() const noexcept { return records_.size(); }

 private:
  std::vector<EpochRecord> records_;
  double numerator_ = 0.0;
  bool open_ = false;
  double final_l1_ = 0.0, final_l2_ = 0.0;
};

struct TraceSummary {
  std::size_t T = 0;
  double vol_bar = 0.0;
  double gamma_bar = 0.0;
  std::uint64_t total_ops = 0;
  bool empty = true;  // T == 0, means undefined
};

TraceSummary summarize(const EpochTrace& trace);

}  // namespace localppr
