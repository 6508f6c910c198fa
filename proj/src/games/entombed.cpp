#include "maale/games/entombed.hpp"

#include <algorithm>
#include <deque>

namespace maale {

namespace {

constexpr Rgb kBackground{16, 16, 40};
constexpr Rgb kWallColor{150, 100, 200};
constexpr Rgb kPowerUpColor{240, 220, 60};
constexpr Rgb kExplorerColor[2] = {{220, 60, 60}, {60, 200, 110}};
constexpr std::array<GridPoint, 4> kDirs{{{0, -1}, {1, 0}, {0, 1}, {-1, 0}}};

}  // namespace

Entombed::Entombed(ModeId mode) : play_(decode_entombed_mode(mode)) {}

std::vector<Action> Entombed::minimal_actions(ModeId) {
  return {Action::kNoop,     Action::kUp,        Action::kRight,       Action::kLeft,
          Action::kDown,     Action::kUpFire,    Action::kRightFire,   Action::kLeftFire,
          Action::kDownFire};
}

Entombed::Cell Entombed::cell(int col, int row) const {
  if (col < 0 || col >= kCols || row < 0 || row >= static_cast<int>(rows_.size())) return kWall;
  return rows_[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)];
}

// Appends one stage: the interior of a fresh perfect maze without its top
// border, so the first row is a row of open cells. The bottom border gets
// three gaps that lead into the next stage.
void Entombed::generate_stage(Rng& rng) {
  const WallGrid maze = carve_perfect_maze(kStageCellsX, kStageCellsY, rng);
  const auto first = rows_.size();
  for (int gy = 1; gy <= kStageRows; ++gy) {
    std::array<Cell, kCols> row{};
    row.fill(kWall);
    for (int gx = 0; gx < maze.width(); ++gx) row[static_cast<std::size_t>(gx)] = maze.wall(gx, gy) ? kWall : kOpen;
    rows_.push_back(row);
  }
  auto& last = rows_.back();
  for (int g = 0; g < 3; ++g) last[static_cast<std::size_t>(2 * rng.below(kStageCellsX) + 1)] = kOpen;
  for (int k = 0; k < kPowerUpsPerStage; ++k) {
    const int col = 2 * rng.below(kStageCellsX) + 1;
    const int row = static_cast<int>(first) + 2 * rng.between(1, kStageCellsY - 1);
    rows_[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)] = kPowerUp;
  }
}

void Entombed::ensure_rows(Rng& rng) {
  while (static_cast<int>(rows_.size()) < scroll_ + kViewRows + kStageRows) generate_stage(rng);
}

void Entombed::place_at_stage_start() {
  for (int p = 0; p < 2; ++p) {
    auto& e = explorers_[static_cast<std::size_t>(p)];
    e.pos = {kStartCols[static_cast<std::size_t>(p)], stage_start_};
    e.cooldown = 0;
    e.block_cooldown = 0;
  }
  scroll_ = stage_start_ - kHeadroom;
  scroll_timer_ = 0;
  sections_passed_ = 0;
}

void Entombed::reset(Rng& rng) {
  clear_terminal();
  rows_.clear();
  frame_ = 0;
  stage_start_ = 0;
  lives_ = {kStartLives, kStartLives};
  for (auto& e : explorers_) e = Explorer{};
  place_at_stage_start();
  ensure_rows(rng);
}

bool Entombed::has_escape(int player) const {
  const int top = std::max(scroll_, 0);
  const int bottom = static_cast<int>(rows_.size()) - 1;
  const GridPoint start = explorers_[static_cast<std::size_t>(player)].pos;
  if (start.y < top) return false;
  const int height = bottom - top + 1;
  std::vector<std::uint8_t> seen(static_cast<std::size_t>(height) * kCols, 0);
  std::deque<GridPoint> queue{start};
  seen[static_cast<std::size_t>(start.y - top) * kCols + start.x] = 1;
  while (!queue.empty()) {
    const GridPoint p = queue.front();
    queue.pop_front();
    if (p.y == bottom) return true;
    for (const auto& d : kDirs) {
      const GridPoint n{p.x + d.x, p.y + d.y};
      if (n.y < top || n.y > bottom || !open(n.x, n.y)) continue;
      auto& s = seen[static_cast<std::size_t>(n.y - top) * kCols + n.x];
      if (s) continue;
      s = 1;
      queue.push_back(n);
    }
  }
  return false;
}

StepOutcome Entombed::step(std::span<const Action> actions, Rng& rng) {
  StepOutcome out;
  out.rewards.assign(2, 0);
  ++frame_;
  bool blocks_changed = false;

  for (int p = 0; p < 2; ++p) {
    auto& me = explorers_[static_cast<std::size_t>(p)];
    const Joystick j = read_joystick(actions[static_cast<std::size_t>(p)]);
    if (me.block_cooldown > 0) --me.block_cooldown;
    if (me.cooldown > 0) --me.cooldown;
    const bool cardinal = (j.dx == 0) != (j.dy == 0);
    if (!cardinal) continue;
    const GridPoint target{me.pos.x + j.dx, me.pos.y + j.dy};
    if (j.fire) {
      const bool interior = target.x >= 1 && target.x < 2 * kStageCellsX && target.y >= std::max(scroll_, 0) &&
                            target.y < static_cast<int>(rows_.size());
      if (me.charges == 0 || me.block_cooldown > 0 || !interior) continue;
      auto& c = rows_[static_cast<std::size_t>(target.y)][static_cast<std::size_t>(target.x)];
      const auto& other = explorers_[static_cast<std::size_t>(1 - p)];
      if (c == kWall) {
        c = kOpen;
      } else if (!(other.pos == target)) {
        c = kWall;
      } else {
        continue;
      }
      --me.charges;
      me.block_cooldown = kBlockCooldown;
      blocks_changed = true;
    } else if (me.cooldown == 0 && open(target.x, target.y) && target.y >= scroll_) {
      me.pos = target;
      me.cooldown = kMoveDelay - 1;
      auto& c = rows_[static_cast<std::size_t>(target.y)][static_cast<std::size_t>(target.x)];
      if (c == kPowerUp) {
        c = kOpen;
        me.charges = std::min(me.charges + 1, kMaxCharges);
      }
    }
  }

  bool scrolled = false;
  if (++scroll_timer_ >= kScrollFrames) {
    scroll_timer_ = 0;
    ++scroll_;
    scrolled = true;
    ensure_rows(rng);
  }

  // Sections passed by the leading explorer; a full stage moves the restart
  // point down.
  const int lead = std::max(explorers_[0].pos.y, explorers_[1].pos.y);
  while (lead >= stage_start_ + kSectionRows * (sections_passed_ + 1)) {
    ++sections_passed_;
    out.progress = true;
    if (play_ == EntombedPlay::kCooperative) {
      out.rewards[0] += 1;
      out.rewards[1] += 1;
    }
    if (sections_passed_ == kSections) {
      stage_start_ += kStageRows;
      sections_passed_ = 0;
    }
  }

  std::array<bool, 2> died{};
  for (int p = 0; p < 2; ++p) {
    const auto& me = explorers_[static_cast<std::size_t>(p)];
    if (me.pos.y < scroll_) {
      died[static_cast<std::size_t>(p)] = true;
    } else if ((blocks_changed || scrolled) && !has_escape(p)) {
      died[static_cast<std::size_t>(p)] = true;
    }
  }
  if (died[0] || died[1]) {
    out.progress = true;
    bool eliminated = false;
    for (int p = 0; p < 2; ++p) {
      if (!died[static_cast<std::size_t>(p)]) continue;
      if (play_ == EntombedPlay::kCompetitive) {
        out.rewards[static_cast<std::size_t>(p)] -= 1;
        out.rewards[static_cast<std::size_t>(1 - p)] += 1;
      } else {
        out.rewards[0] += 1;
        out.rewards[1] += 1;
      }
      auto& l = lives_[static_cast<std::size_t>(p)];
      if (l == 0) {
        l = kEliminated;
        eliminated = true;
      } else {
        --l;
      }
    }
    if (eliminated) {
      end(TerminalCause::kLives);
      return out;
    }
    // Restart the current stage with a freshly generated maze.
    rows_.resize(static_cast<std::size_t>(stage_start_));
    place_at_stage_start();
    ensure_rows(rng);
  }

  if (frame_ >= kFrameLimit) end(TerminalCause::kTime);
  return out;
}

void Entombed::render(Screen& screen) const {
  screen.clear(kBackground);
  for (int r = 0; r < kViewRows; ++r) {
    const int row = scroll_ + r;
    for (int col = 0; col < kCols; ++col) {
      const Cell c = cell(col, row);
      if (c == kWall) {
        screen.fill_rect(col * kCellPx, kTopY + r * kCellPx, kCellPx, kCellPx, kWallColor);
      } else if (c == kPowerUp) {
        screen.fill_rect(col * kCellPx + 2, kTopY + r * kCellPx + 2, 4, 4, kPowerUpColor);
      }
    }
  }
  for (int p = 0; p < 2; ++p) {
    const auto& e = explorers_[static_cast<std::size_t>(p)];
    const int r = e.pos.y - scroll_;
    if (r >= 0 && r < kViewRows) {
      screen.fill_rect(e.pos.x * kCellPx + 1, kTopY + r * kCellPx + 1, 6, 6, kExplorerColor[p]);
    }
    draw_number(screen, p == 0 ? 20 : 120, 6, std::max(lives_[static_cast<std::size_t>(p)], 0),
                kExplorerColor[p]);
    draw_number(screen, p == 0 ? 44 : 144, 6, e.charges, kPowerUpColor);
  }
}

std::vector<int> Entombed::features(int player) const {
  const auto& me = explorers_[static_cast<std::size_t>(player)];
  std::vector<int> f;
  for (const auto& d : kDirs) f.push_back(open(me.pos.x + d.x, me.pos.y + d.y) ? 1 : 0);
  const int depth = me.pos.y - scroll_;
  f.push_back(depth < 4 ? 0 : depth < 10 ? 1 : 2);
  f.push_back(me.charges > 0 ? 1 : 0);
  return f;
}

}  // namespace maale
