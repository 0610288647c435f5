#include "ringpart/static_partitioner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>

#include "ringpart/error.hpp"
#include "ringpart/hitting_game.hpp"
#include "ringpart/smin.hpp"

namespace ringpart {

bool is_monochromatic(const Arc& arc, const Coloring& initial, double delta) {
  const std::size_t n = initial.size();
  if (n == 0 || arc.length == 0) return false;
  std::map<ServerId, std::size_t> counts;
  std::size_t best = 0;
  for (std::size_t i = 0; i < arc.length; ++i) best = std::max(best, ++counts[initial[arc.at(i, n)]]);
  return static_cast<double>(best) > delta * static_cast<double>(arc.length) + 1e-9;
}

ClusterDecision classify_slice(std::span<const std::size_t> counts, std::optional<ServerId> previous) {
  std::size_t size = 0;
  for (std::size_t c : counts) size += c;
  ClusterDecision d;
  std::optional<std::size_t> majority;
  for (std::size_t c = 0; c < counts.size(); ++c)
    if (2 * counts[c] > size) majority = c;
  if (!majority) return d;
  const auto c = static_cast<ServerId>(*majority);
  const bool was_in = previous == c;
  if (4 * counts[*majority] > 3 * size) {
    d.kind = ClusterKind::color;
    d.color = c;
    d.charged = !was_in;
  } else if (was_in) {
    d.kind = ClusterKind::color;
    d.color = c;
  }
  return d;
}

// ---------------------------------------------------------------------------

namespace {

ServerId least_loaded(const std::vector<std::size_t>& loads, ServerId skip_a, ServerId skip_b) {
  ServerId best = -1;
  for (std::size_t s = 0; s < loads.size(); ++s) {
    const auto id = static_cast<ServerId>(s);
    if (id == skip_a || id == skip_b) continue;
    if (best < 0 || loads[s] < loads[static_cast<std::size_t>(best)]) best = id;
  }
  return best;
}

}  // namespace

RebalanceResult rebalance(std::vector<ScheduledCluster>& clusters, std::size_t ell, std::size_t k,
                          double eps_prime) {
  RebalanceResult result;
  std::size_t largest = 0;
  std::vector<std::size_t> loads(ell, 0);
  for (const auto& c : clusters) {
    require(c.server >= 0 && static_cast<std::size_t>(c.server) < ell, Errc::instance, "cluster on unknown server");
    largest = std::max(largest, c.size);
    loads[static_cast<std::size_t>(c.server)] += c.size;
  }
  const double kd = static_cast<double>(k);
  result.D = std::max(2.0, static_cast<double>(largest) / kd);
  const double trigger = (result.D + eps_prime) * kd;
  const double target_load = result.D * kd;

  auto relocate = [&](ScheduledCluster& c, ServerId to) {
    loads[static_cast<std::size_t>(c.server)] -= c.size;
    loads[static_cast<std::size_t>(to)] += c.size;
    c.server = to;
    result.moved += c.size;
  };

  for (;;) {
    ServerId s = -1;
    for (std::size_t i = 0; i < ell; ++i)
      if (static_cast<double>(loads[i]) > trigger) {
        s = static_cast<ServerId>(i);
        break;
      }
    if (s < 0) break;

    while (static_cast<double>(loads[static_cast<std::size_t>(s)]) > target_load) {
      ScheduledCluster* smallest = nullptr;
      for (auto& c : clusters) {
        if (c.server != s || c.size == 0) continue;
        if (!smallest || c.size < smallest->size || (c.size == smallest->size && c.id < smallest->id))
          smallest = &c;
      }
      require(smallest != nullptr, Errc::invariant, "overloaded server holds no cluster");
      const ServerId to = least_loaded(loads, s, -1);
      require(to >= 0 && loads[static_cast<std::size_t>(to)] <= k, Errc::invariant,
              "rebalancing found no server with load at most k");
      if (smallest->size > k) {
        const ServerId spill = least_loaded(loads, s, to);
        require(spill >= 0 && loads[static_cast<std::size_t>(spill)] <= k, Errc::invariant,
                "rebalancing found no server to evacuate onto");
        for (auto& c : clusters)
          if (c.server == to && c.size > 0) relocate(c, spill);
      }
      relocate(*smallest, to);
    }
  }
  return result;
}

// ---------------------------------------------------------------------------

StaticPartitioner::StaticPartitioner(const RingConfig& cfg, const Coloring& initial)
    : cfg_(cfg), n_(cfg.n), initial_(initial), rng_root_(Stream(cfg.seed).child("static")) {
  cfg_.validate();
  require(n_ >= 2, Errc::parameter, "static partitioner needs n >= 2");
  require(initial.size() == n_, Errc::instance, "initial coloring length differs from n");
  for (std::size_t p = 0; p < n_; ++p)
    require(initial[p] >= 0 && static_cast<std::size_t>(initial[p]) < cfg_.ell, Errc::instance,
            "initial coloring uses an unknown server");
  const auto initial_loads = initial.loads(cfg_.ell);
  for (std::size_t s = 0; s < cfg_.ell; ++s)
    require(initial_loads[s] <= cfg_.k, Errc::instance,
            "initial coloring puts " + std::to_string(initial_loads[s]) + " processes on server " +
                std::to_string(s) + " (capacity " + std::to_string(cfg_.k) + ")");

  eps_prime_ = std::min(cfg_.epsilon / 2.0, 1.0);
  delta_bar_ = hitting::delta_bar_for(eps_prime_);
  cap_ = std::min(cfg_.k + 1, n_);

  x_.assign(n_, 0);
  cut_count_.assign(n_, 0);
  cover_.assign(n_, 0);
  slice_of_.assign(n_, 0);
  color_server_.resize(cfg_.ell);
  for (std::size_t c = 0; c < cfg_.ell; ++c) color_server_[c] = static_cast<ServerId>(c);

  std::vector<std::size_t> cuts;
  for (std::size_t e = 0; e < n_; ++e)
    if (initial[e] != initial[(e + 1) % n_]) cuts.push_back(e);

  for (std::size_t e : cuts) {
    RingInterval iv;
    iv.id = static_cast<IntervalId>(intervals_.size());
    iv.bounds = Arc{e, 2};
    iv.center = e;
    iv.cut = e;
    interval_rng_.push_back(rng_root_.child("interval").child(iv.id));
    intervals_.push_back(iv);
    cut_count_[e] = 1;
    ++cover_[e];
    ++cover_[(e + 1) % n_];
  }

  auto new_slice = [&](ServerId color) {
    Slice s;
    s.counts.assign(cfg_.ell, 0);
    s.kind = ClusterKind::color;
    s.color = color;
    s.server = color;
    s.alive = true;
    slices_.push_back(std::move(s));
    return slices_.size() - 1;
  };
  auto add = [&](std::size_t slice, std::size_t p) {
    slice_of_[p] = slice;
    ++slices_[slice].size;
    ++slices_[slice].counts[static_cast<std::size_t>(initial_[p])];
  };

  if (cuts.empty()) {
    const std::size_t id = new_slice(initial[0]);
    for (std::size_t p = 0; p < n_; ++p) add(id, p);
  } else {
    for (std::size_t i = 0; i < cuts.size(); ++i) {
      const std::size_t first = (cuts[i] + 1) % n_;
      const std::size_t id = new_slice(initial[first]);
      const std::size_t last = cuts[(i + 1) % cuts.size()];
      for (std::size_t p = first;; p = (p + 1) % n_) {
        add(id, p);
        if (p == last) break;
      }
    }
  }
  coloring_ = current_coloring();
}

double StaticPartitioner::load_bound() const { return (3.0 + 2.0 * eps_prime_) * static_cast<double>(cfg_.k); }

double StaticPartitioner::singleton_bound() const {
  return (3.0 + 2.0 * (1.0 - delta_bar_) / delta_bar_) * static_cast<double>(cfg_.k);
}

std::size_t StaticPartitioner::multiplicity_bound() const {
  std::size_t bits = 0;
  while ((std::size_t{1} << bits) < cfg_.k + 1) ++bits;
  return 6 + 8 * bits;
}

std::size_t StaticPartitioner::active_intervals() const {
  return static_cast<std::size_t>(std::count_if(intervals_.begin(), intervals_.end(), [](const RingInterval& iv) {
    return iv.status == IntervalStatus::active;
  }));
}

std::vector<double> StaticPartitioner::law(const RingInterval& iv) const {
  std::vector<double> xs(iv.edges());
  for (std::size_t j = 0; j < xs.size(); ++j) xs[j] = static_cast<double>(x_[edge_in(iv, j)]);
  return smin::grad_smin_c(xs, static_cast<double>(iv.edges()));
}

std::uint64_t StaticPartitioner::min_count(const RingInterval& iv) const {
  std::uint64_t lo = std::numeric_limits<std::uint64_t>::max();
  for (std::size_t j = 0; j < iv.edges(); ++j) lo = std::min(lo, x_[edge_in(iv, j)]);
  return lo;
}

ServerId StaticPartitioner::server_of(const Slice& s) const {
  return s.kind == ClusterKind::color ? color_server_[static_cast<std::size_t>(s.color)] : s.server;
}

StaticPartitioner::Snapshot StaticPartitioner::snapshot(std::size_t slice) const {
  const Slice& s = slices_[slice];
  return Snapshot{s.kind, s.color, server_of(s)};
}

Coloring StaticPartitioner::current_coloring() const {
  std::vector<ServerId> color(n_);
  for (std::size_t p = 0; p < n_; ++p) color[p] = server_of(slices_[slice_of_[p]]);
  return Coloring(std::move(color));
}

void StaticPartitioner::transfer(std::size_t process, std::size_t from, std::size_t to) {
  const auto c = static_cast<std::size_t>(initial_[process]);
  Slice& src = slices_[from];
  --src.size;
  --src.counts[c];
  if (src.size == 0) src.alive = false;
  ++slices_[to].size;
  ++slices_[to].counts[c];
  slice_of_[process] = to;
}

std::size_t StaticPartitioner::carve(std::size_t process, std::size_t from) {
  Slice fresh;
  fresh.counts.assign(cfg_.ell, 0);
  fresh.kind = slices_[from].kind;
  fresh.color = slices_[from].color;
  fresh.server = server_of(slices_[from]);
  fresh.alive = true;
  slices_.push_back(std::move(fresh));
  const std::size_t id = slices_.size() - 1;
  transfer(process, from, id);
  return id;
}

// Moves one cut from edge `from_edge` to its neighbor and reshapes the two
// slices around it. Slices whose membership changes are recorded in
// `touched` together with their cluster state before the move.
void StaticPartitioner::unit_step(std::size_t from_edge, bool rightward,
                                  std::vector<std::pair<std::size_t, Snapshot>>& touched) {
  auto touch = [&](std::size_t slice) {
    for (const auto& t : touched)
      if (t.first == slice) return;
    touched.emplace_back(slice, snapshot(slice));
  };
  const std::size_t a = from_edge;
  const std::size_t b = rightward ? (a + 1) % n_ : (a + n_ - 1) % n_;
  const bool shared = cut_count_[a] >= 2;
  const bool landing_on_cut = cut_count_[b] >= 1;
  --cut_count_[a];
  ++cut_count_[b];

  // the process that changes sides of the cut
  const std::size_t q = rightward ? b : a;
  const std::size_t left = slice_of_[a];
  const std::size_t right = slice_of_[(a + 1) % n_];
  const std::size_t donor = rightward ? right : left;
  const std::size_t receiver = rightward ? left : right;

  if (!shared) {
    if (donor == receiver) return;  // a lone cut rotating around the ring
    touch(donor);
    touch(receiver);
    transfer(q, donor, receiver);
  } else if (!landing_on_cut) {
    touch(donor);
    const Snapshot parent = snapshot(donor);
    const std::size_t id = carve(q, donor);
    touched.emplace_back(id, parent);
  }
}

std::uint64_t StaticPartitioner::move_cut(RingInterval& iv, std::size_t to_edge) {
  const std::size_t from = *iv.cut;
  const std::size_t oa = offset_of(iv, from);
  const std::size_t ob = offset_of(iv, to_edge);
  require(oa < iv.edges() && ob < iv.edges(), Errc::invariant, "cut edge left its interval");
  if (oa == ob) return 0;
  const bool rightward = ob > oa;
  const std::size_t steps = rightward ? ob - oa : oa - ob;
  std::vector<std::pair<std::size_t, Snapshot>> touched;
  std::size_t pos = from;
  for (std::size_t i = 0; i < steps; ++i) {
    unit_step(pos, rightward, touched);
    pos = rightward ? (pos + 1) % n_ : (pos + n_ - 1) % n_;
  }
  iv.cut = to_edge;
  for (const auto& [slice, before] : touched) cluster_update(before, slice);
  return steps;
}

std::size_t StaticPartitioner::slice_start(std::size_t slice) const {
  if (slices_[slice].size == n_) return 0;
  for (std::size_t p = 0; p < n_; ++p)
    if (slice_of_[p] == slice && slice_of_[(p + n_ - 1) % n_] != slice) return p;
  return 0;
}

std::uint64_t StaticPartitioner::remove_cut(RingInterval& iv) {
  const std::size_t a = *iv.cut;
  iv.cut.reset();
  if (cut_count_[a] >= 2) {
    --cut_count_[a];
    return 0;
  }
  cut_count_[a] = 0;
  const std::size_t left = slice_of_[a];
  const std::size_t right = slice_of_[(a + 1) % n_];
  if (left == right) return 0;

  const std::size_t ls = slices_[left].size, rs = slices_[right].size;
  bool left_smaller = ls < rs;
  if (ls == rs) left_smaller = slice_start(left) < slice_start(right);
  const std::size_t small = left_smaller ? left : right;
  const std::size_t large = left_smaller ? right : left;

  const Slice& sa = slices_[left];
  const Slice& sb = slices_[right];
  const bool same_color_cluster =
      sa.kind == ClusterKind::color && sb.kind == ClusterKind::color && sa.color == sb.color;
  const std::uint64_t cost = same_color_cluster ? 0 : std::min(ls, rs);

  const Snapshot before = snapshot(large);
  if (left_smaller) {
    for (std::size_t p = a; slice_of_[p] == small; p = (p + n_ - 1) % n_) transfer(p, small, large);
  } else {
    for (std::size_t p = (a + 1) % n_; slice_of_[p] == small; p = (p + 1) % n_) transfer(p, small, large);
  }
  cluster_update(before, large);
  return cost;
}

void StaticPartitioner::cluster_update(const Snapshot& before, std::size_t slice) {
  Slice& s = slices_[slice];
  if (!s.alive) return;
  std::optional<ServerId> previous;
  if (before.kind == ClusterKind::color) previous = before.color;
  const auto d = classify_slice(s.counts, previous);
  if (d.charged) pending_mono_ += s.size;
  s.kind = d.kind;
  s.color = d.color;
  // a new singleton stays where its processes already are
  if (d.kind == ClusterKind::singleton) s.server = before.server;
}

void StaticPartitioner::grow(RingInterval& iv, StepRecord& rec) {
  const Arc old = iv.bounds;
  const std::size_t len = old.length;
  std::size_t left, length;
  if (2 * len <= cap_) {
    left = len / 2;
    length = 2 * len;
  } else {
    // ceil on the left, floor on the right keeps the length at exactly the cap
    left = (cap_ - len + 1) / 2;
    length = cap_;
  }
  iv.core = old;
  iv.bounds = Arc{(old.start + n_ - left) % n_, length};
  ++iv.rank;
  for (std::size_t j = 0; j < length; ++j)
    if (j < left || j >= left + len) ++cover_[iv.bounds.at(j, n_)];

  IntervalEvent grown;
  grown.kind = IntervalEvent::Kind::grown;
  grown.interval = iv.id;
  grown.start = iv.bounds.start;
  grown.length = iv.bounds.length;
  rec.events.push_back(grown);

  if (is_monochromatic(iv.bounds, initial_, delta_bar_)) {
    iv.status = IntervalStatus::inactive_mono;
    rec.cost_merge += remove_cut(iv);
    IntervalEvent ev;
    ev.kind = IntervalEvent::Kind::mono_deactivated;
    ev.interval = iv.id;
    ev.start = iv.bounds.start;
    ev.length = iv.bounds.length;
    rec.events.push_back(ev);
    return;
  }

  for (auto& other : intervals_) {
    if (other.id == iv.id || other.status != IntervalStatus::active) continue;
    if (!iv.bounds.contains(other.bounds, n_)) continue;
    IntervalEvent ev;
    ev.kind = IntervalEvent::Kind::dominated;
    ev.interval = other.id;
    ev.start = other.bounds.start;
    ev.length = other.bounds.length;
    ev.by = iv.id;
    ev.cut_inside = offset_of(iv, *other.cut) < iv.edges();
    other.status = IntervalStatus::inactive_dominated;
    rec.cost_merge += remove_cut(other);
    rec.events.push_back(ev);
  }

  std::vector<double> widened(iv.edges(), 0.0);
  {
    std::vector<double> xs(old.length - 1);
    for (std::size_t j = 0; j < xs.size(); ++j) xs[j] = static_cast<double>(x_[old.at(j, n_)]);
    const auto before = smin::grad_smin_c(xs, static_cast<double>(xs.size()));
    for (std::size_t j = 0; j < before.size(); ++j) widened[left + j] = before[j];
  }
  const auto after = law(iv);
  const std::size_t next = hitting::couple(widened, after, offset_of(iv, *iv.cut), interval_rng_[iv.id]);
  const std::uint64_t d = move_cut(iv, edge_in(iv, next));
  rec.cost_move += d;
  ledger_.per_interval[iv.id].move += d;
}

void StaticPartitioner::reschedule(StepRecord& rec) {
  std::vector<ScheduledCluster> clusters;
  std::vector<std::size_t> color_size(cfg_.ell, 0);
  for (std::size_t i = 0; i < slices_.size(); ++i) {
    const Slice& s = slices_[i];
    if (!s.alive) continue;
    if (s.kind == ClusterKind::color)
      color_size[static_cast<std::size_t>(s.color)] += s.size;
    else
      clusters.push_back({cfg_.ell + i, s.size, s.server});
  }
  for (std::size_t c = 0; c < cfg_.ell; ++c)
    if (color_size[c] > 0) clusters.push_back({c, color_size[c], color_server_[c]});

  const auto result = rebalance(clusters, cfg_.ell, cfg_.k, eps_prime_);
  if (result.moved == 0) return;
  for (const auto& c : clusters) {
    if (c.id < cfg_.ell)
      color_server_[c.id] = c.server;
    else
      slices_[c.id - cfg_.ell].server = c.server;
  }
  rec.cost_bal += result.moved;
}

StepRecord StaticPartitioner::serve(std::size_t edge) {
  require(edge < n_, Errc::instance, "edge " + std::to_string(edge) + " out of range");
  StepRecord rec;
  rec.step = ++step_;
  rec.edge = edge;
  rec.algorithm = "static";
  pending_mono_ = 0;

  if (serve_request(coloring_, EdgeId{edge}) != 0) {
    rec.cost_hit = 1;
    const RingInterval* owner = nullptr;
    for (const auto& iv : intervals_)
      if (iv.status == IntervalStatus::active && iv.cut == edge) {
        owner = &iv;
        break;
      }
    require(owner != nullptr, Errc::invariant, "server boundary without an active cut edge");
    ++ledger_.per_interval[owner->id].hit;
  }

  std::vector<std::pair<std::size_t, std::vector<double>>> affected;
  for (const auto& iv : intervals_)
    if (iv.status == IntervalStatus::active && offset_of(iv, edge) < iv.edges())
      affected.emplace_back(iv.id, law(iv));
  ++x_[edge];
  for (auto& [id, before] : affected) {
    RingInterval& iv = intervals_[id];
    const auto after = law(iv);
    const std::size_t next = hitting::couple(before, after, offset_of(iv, *iv.cut), interval_rng_[id]);
    const std::uint64_t d = move_cut(iv, edge_in(iv, next));
    rec.cost_move += d;
    ledger_.per_interval[id].move += d;
  }

  for (bool grew = true; grew;) {
    grew = false;
    for (auto& iv : intervals_) {
      if (iv.status != IntervalStatus::active || iv.bounds.length >= cap_) continue;
      if (!hitting::growth_due(min_count(iv), iv.bounds.length, delta_bar_)) continue;
      grow(iv, rec);
      grew = true;
      break;
    }
  }

  rec.cost_mono = pending_mono_;
  reschedule(rec);

  coloring_ = current_coloring();
  rec.max_load = coloring_.max_load();
  rec.max_color_cluster = max_color_cluster();
  rec.max_singleton_cluster = max_singleton_cluster();
  rec.max_multiplicity = max_multiplicity();
  ledger_.record(rec);
  return rec;
}

std::vector<StaticPartitioner::SliceView> StaticPartitioner::slices() const {
  std::vector<SliceView> out;
  std::vector<bool> seen(slices_.size(), false);
  // begin at a slice boundary so that every slice is listed once, in ring order
  std::size_t origin = 0;
  for (std::size_t p = 0; p < n_; ++p)
    if (slice_of_[p] != slice_of_[(p + n_ - 1) % n_]) {
      origin = p;
      break;
    }
  for (std::size_t i = 0; i < n_; ++i) {
    const std::size_t p = (origin + i) % n_;
    const std::size_t id = slice_of_[p];
    if (seen[id]) continue;
    seen[id] = true;
    const Slice& s = slices_[id];
    out.push_back(SliceView{p, s.size, s.kind, s.color, server_of(s), s.counts});
  }
  return out;
}

std::size_t StaticPartitioner::max_color_cluster() const {
  std::vector<std::size_t> size(cfg_.ell, 0);
  for (const auto& s : slices_)
    if (s.alive && s.kind == ClusterKind::color) size[static_cast<std::size_t>(s.color)] += s.size;
  return *std::max_element(size.begin(), size.end());
}

std::size_t StaticPartitioner::max_singleton_cluster() const {
  std::size_t best = 0;
  for (const auto& s : slices_)
    if (s.alive && s.kind == ClusterKind::singleton) best = std::max(best, s.size);
  return best;
}

std::size_t StaticPartitioner::max_multiplicity() const { return *std::max_element(cover_.begin(), cover_.end()); }

std::vector<std::size_t> StaticPartitioner::cluster_loads() const { return coloring_.loads(cfg_.ell); }

void StaticPartitioner::validate() const {
  std::vector<std::size_t> size(slices_.size(), 0);
  for (std::size_t p = 0; p < n_; ++p) {
    require(slice_of_[p] < slices_.size() && slices_[slice_of_[p]].alive, Errc::invariant,
            "process assigned to a dead slice");
    ++size[slice_of_[p]];
  }
  for (std::size_t i = 0; i < slices_.size(); ++i) {
    const Slice& s = slices_[i];
    if (!s.alive) continue;
    require(s.size == size[i] && s.size > 0, Errc::invariant, "slice size out of sync");
    std::size_t total = 0;
    for (std::size_t c : s.counts) total += c;
    require(total == s.size, Errc::invariant, "slice color counts out of sync");
  }

  std::size_t cuts = 0, distinct = 0;
  for (std::size_t e = 0; e < n_; ++e) {
    cuts += cut_count_[e];
    distinct += cut_count_[e] > 0;
  }
  std::size_t active = 0;
  for (const auto& iv : intervals_) {
    if (iv.status != IntervalStatus::active) {
      require(!iv.cut, Errc::invariant, "inactive interval kept a cut edge");
      continue;
    }
    ++active;
    require(iv.cut && offset_of(iv, *iv.cut) < iv.edges(), Errc::invariant, "active cut outside its interval");
    require(cut_count_[*iv.cut] > 0, Errc::invariant, "cut multiset lost an active cut");
    require(iv.bounds.length <= cap_, Errc::invariant, "interval longer than its cap");
  }
  require(active == cuts, Errc::invariant, "cut multiset does not match active intervals");

  for (std::size_t e = 0; e < n_; ++e) {
    const bool boundary = slice_of_[e] != slice_of_[(e + 1) % n_];
    if (boundary) require(cut_count_[e] > 0, Errc::invariant, "slice boundary without a cut");
    if (distinct >= 2 && cut_count_[e] > 0)
      require(boundary, Errc::invariant, "cut edge inside a slice");
  }
}

}  // namespace ringpart
