#include "localppr/process.hpp"

#include <cmath>
#include <stdexcept>

namespace localppr {

EvolvingQueue::EvolvingQueue(std::size_t n) : ring_(n + 1), in_queue_(n, 0) {
  if (n >= kSentinel) throw std::length_error("graph too large for queue");
  enqueue(kSentinel);
}

void EvolvingQueue::enqueue(NodeId v) {
  std::size_t tail = head_ + count_;
  if (tail >= ring_.size()) tail -= ring_.size();
  ring_[tail] = v;
  ++count_;
}

NodeId EvolvingQueue::dequeue() {
  NodeId v = ring_[head_];
  if (++head_ == ring_.size()) head_ = 0;
  --count_;
  return v;
}

bool EvolvingQueue::push(NodeId v) {
  if (in_queue_.at(v)) return false;
  in_queue_[v] = 1;
  enqueue(v);
  return true;
}

EvolvingQueue::Event EvolvingQueue::next() {
  NodeId v = dequeue();
  if (v == kSentinel) {
    enqueue(kSentinel);
    if (count_ == 1) return {Kind::Exhausted, kSentinel, epoch_};
    ++epoch_;
    return {Kind::EpochBoundary, kSentinel, epoch_};
  }
  in_queue_[v] = 0;
  return {Kind::Node, v, epoch_};
}

void EvolvingQueue::drain_epoch(std::vector<NodeId>& out) {
  while (ring_[head_] != kSentinel) {
    NodeId v = dequeue();
    in_queue_[v] = 0;
    out.push_back(v);
  }
}

std::vector<NodeId> EvolvingQueue::contents() const {
  std::vector<NodeId> out;
  out.reserve(count_);
  for (std::size_t i = 0, j = head_; i < count_; ++i) {
    out.push_back(ring_[j]);
    if (++j == ring_.size()) j = 0;
  }
  return out;
}

void EpochTrace::begin_epoch(double l1, double l2) {
  if (open_) throw std::logic_error("epoch already open");
  EpochRecord rec;
  rec.t = static_cast<std::int64_t>(records_.size());
  rec.l1 = l1;
  rec.l2 = l2;
  rec.cum_ops = records_.empty() ? 0 : records_.back().cum_ops;
  records_.push_back(rec);
  numerator_ = 0.0;
  open_ = true;
}

void EpochTrace::record_processed(std::uint32_t degree, double value) {
  if (!open_) throw std::logic_error("no open epoch");
  EpochRecord& rec = records_.back();
  rec.vol += degree;
  rec.size += 1;
  rec.cum_ops += degree;
  numerator_ += std::abs(value);
}

void EpochTrace::end_epoch() {
  if (!open_) throw std::logic_error("no open epoch");
  EpochRecord& rec = records_.back();
  rec.gamma = rec.l1 > 0 ? numerator_ / rec.l1 : 0.0;
  open_ = false;
}

void EpochTrace::set_cheb_ratio(double v) {
  if (records_.empty()) throw std::logic_error("no epoch");
  records_.back().cheb_ratio = v;
}

TraceSummary summarize(const EpochTrace& trace) {
  TraceSummary s;
  const auto& recs = trace.records();
  s.T = recs.size();
  if (s.T == 0) return s;
  s.empty = false;
  double vol = 0.0, gamma = 0.0;
  for (const auto& r : recs) {
    vol += static_cast<double>(r.vol);
    gamma += r.gamma;
  }
  s.vol_bar = vol / static_cast<double>(s.T);
  s.gamma_bar = gamma / static_cast<double>(s.T);
  s.total_ops = recs.back().cum_ops;
  return s;
}

}  // namespace localppr
