#include <algorithm>
#include <optional>
#include <random>

#include "cube.hpp"
#include "hdml/errors.hpp"
#include "hdml/hda.hpp"

namespace hdml {

namespace {

using detail::CubeCell;

class Generator {
 public:
  explicit Generator(const RandomHdaParams& p) : p_(p), rng_(p.seed) {
    budget_ = p.cells_per_level;
    budget_.resize(static_cast<std::size_t>(std::max(p.max_dim, 0) + 1), 0);
    used_.assign(budget_.size(), 0);
  }

  Hda run() {
    CellId root = fresh_cell(0);
    b_.add_initial(root);

    int failures = 0;
    int added = 0;
    while (added < p_.max_fragments && failures < 24 && p_.max_dim >= 1 && !p_.alphabet.empty()) {
      if (try_fragment()) {
        ++added;
        failures = 0;
      } else {
        ++failures;
      }
    }

    Hda partial = b_.build();
    for (CellId q : partial.level(0)) {
      if (partial.s_cofaces(q).empty()) b_.add_final(q);
    }
    return b_.build();
  }

 private:
  std::size_t pick(std::size_t n) { return static_cast<std::size_t>(rng_() % n); }
  bool coin() { return (rng_() & 1U) != 0; }

  CellId fresh_cell(int dim) {
    CellId id = b_.add_cell("q" + std::to_string(b_.size()), dim);
    for (const auto& prop : p_.props)
      if (coin()) b_.add_prop(id, prop);
    ++used_[static_cast<std::size_t>(dim)];
    return id;
  }

  std::size_t room(int level) const {
    auto k = static_cast<std::size_t>(level);
    return budget_[k] > used_[k] ? static_cast<std::size_t>(budget_[k] - used_[k]) : 0;
  }

  // The cell of the glued face c for a cube cell w restricted to the face
  // coordinates: terminate or un-start events from the highest index down,
  // so the index of every lower event is still its position.
  CellId face_image(const Hda& h, CellId c, const CubeCell& w, std::size_t face_events) const {
    CellId x = c;
    for (std::size_t k = face_events; k-- > 0;) {
      const int idx = static_cast<int>(k) + 1;
      if (w[k] == detail::kIdle) x = h.s(x, idx);
      else if (w[k] == detail::kDone) x = h.t(x, idx);
    }
    return x;
  }

  bool try_fragment() {
    const int d = 1 + static_cast<int>(pick(static_cast<std::size_t>(p_.max_dim)));
    const auto events = static_cast<std::size_t>(d);
    const std::size_t total = detail::cube_size(events);

    // 0: start corner on an existing state, 1: end corner on an existing
    // state, 2: both corners, 3: glue the s_d face, 4: glue the t_d face,
    // 5: detached component.
    std::size_t mode = pick(6);
    if (mode == 2 && !p_.allow_cycles) mode = 0;
    Hda snapshot = b_.build();
    std::optional<CellId> glue_face;
    if (mode == 3 || mode == 4) {
      const auto& candidates = snapshot.level(d - 1);
      if (d < 2 || candidates.empty()) {
        mode = 0;
      } else {
        glue_face = candidates[pick(candidates.size())];
      }
    }
    const auto& states = snapshot.level(0);

    std::vector<std::optional<CellId>> assign(total);
    std::vector<std::string> event_label(events);
    for (auto& l : event_label) l = p_.alphabet[pick(p_.alphabet.size())];

    CubeCell low(events, detail::kIdle);
    CubeCell high(events, detail::kDone);
    if (mode == 0 || mode == 2) assign[detail::cube_code(low)] = states[pick(states.size())];
    if (mode == 1 || mode == 2) assign[detail::cube_code(high)] = states[pick(states.size())];
    if (glue_face) {
      const std::uint8_t fixed = mode == 3 ? detail::kIdle : detail::kDone;
      for (std::size_t k = 0; k + 1 < events; ++k) {
        const auto& l = snapshot.edge_label(event_edge(snapshot, *glue_face, static_cast<int>(k) + 1));
        if (l) event_label[k] = *l;
      }
      for (std::size_t code = 0; code < total; ++code) {
        CubeCell w = detail::cube_decode(code, events);
        if (w[events - 1] != fixed) continue;
        assign[code] = face_image(snapshot, *glue_face, w, events - 1);
      }
    }

    std::vector<std::size_t> need(budget_.size(), 0);
    for (std::size_t code = 0; code < total; ++code) {
      if (!assign[code]) ++need[static_cast<std::size_t>(detail::cube_dim(detail::cube_decode(code, events)))];
    }
    for (std::size_t k = 0; k < need.size(); ++k) {
      if (need[k] > room(static_cast<int>(k))) return false;
    }

    // Fresh cells bottom-up so that faces exist before their cofaces.
    std::vector<std::size_t> order(total);
    for (std::size_t k = 0; k < total; ++k) order[k] = k;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return detail::cube_dim(detail::cube_decode(a, events)) <
             detail::cube_dim(detail::cube_decode(b, events));
    });
    for (std::size_t code : order) {
      if (assign[code]) continue;
      CubeCell w = detail::cube_decode(code, events);
      const int n = detail::cube_dim(w);
      CellId id = fresh_cell(n);
      assign[code] = id;
      for (int i = 1; i <= n; ++i) {
        b_.set_src(id, i, *assign[detail::cube_code(detail::cube_face(w, i, true))]);
        b_.set_tgt(id, i, *assign[detail::cube_code(detail::cube_face(w, i, false))]);
      }
      if (n == 1) b_.set_label(id, event_label[detail::running_event(w, 1)]);
    }
    return true;
  }

  const RandomHdaParams& p_;
  std::mt19937_64 rng_;
  HdaBuilder b_;
  std::vector<int> budget_;
  std::vector<int> used_;
};

}  // namespace

Hda generate_random(const RandomHdaParams& params) {
  if (params.max_dim < 0 || params.max_dim > 8)
    throw InfeasibleError("max_dim must lie in 0..8");
  if (params.cells_per_level.empty() || params.cells_per_level[0] < 1)
    throw InfeasibleError("at least one state is required");
  bool wants_edges = false;
  for (std::size_t k = 1; k < params.cells_per_level.size(); ++k)
    wants_edges = wants_edges || params.cells_per_level[k] > 0;
  if (wants_edges && params.max_dim >= 1 && params.alphabet.empty())
    throw InfeasibleError("edges requested but the alphabet is empty");
  Generator g(params);
  return g.run();
}

}  // namespace hdml
