#include "maale/games/video_olympics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "maale/core/error.hpp"

namespace maale {

namespace {

using fx::Fixed;
using fx::from_px;

// Pong field.
constexpr int kTop = 28;
constexpr int kBottom = 190;
constexpr int kLeftGoal = 2;
constexpr int kRightGoal = 158;
constexpr int kPaddleSpeed = 3;

// Quadrapong arena.
constexpr int kArenaLeft = 8;
constexpr int kArenaRight = 152;
constexpr int kCorner = 16;

// Volleyball court.
constexpr int kFloor = 186;
constexpr int kCourtLeft = 4;
constexpr int kCourtRight = 156;
constexpr int kNetLeft = 79;
constexpr int kNetRight = 81;
constexpr int kNetTop = 146;
constexpr int kPlayerW = 8;
constexpr int kPlayerH = 14;
constexpr Fixed kJump = 4 * fx::kOne;
constexpr Fixed kPlayerGravity = fx::kOne / 4;
constexpr Fixed kBallGravity = fx::kOne / 8;

constexpr Rgb kBackground{24, 26, 60};
constexpr Rgb kWall{200, 200, 200};
constexpr Rgb kBallColor{236, 236, 236};
constexpr Rgb kTeamColor[2] = {{92, 186, 92}, {213, 130, 74}};
constexpr Rgb kCornerColor{120, 120, 120};

// Bounce angles in 15 degree steps.
constexpr fx::Unit kAngle15[4] = {{4096, 0}, {3956, 1060}, {3547, 2048}, {2896, 2896}};

struct Span {
  int lo;
  int hi;
};

// Swept test of the ball's leading edge against a paddle face. `facing` is
// the direction the ball leaves in (+1 toward increasing `across`).
bool paddle_bounce(Fixed& across, Fixed prev_across, Fixed& along, Fixed prev_along,
                   Fixed& v_across, Fixed& v_along, Fixed& speed, Span across_span,
                   Span along_span, int facing, int max_bin) {
  const Fixed size = from_px(VideoOlympics::kBallSize);
  Fixed plane = 0;
  Fixed lead_prev = 0;
  Fixed lead_now = 0;
  if (facing > 0) {
    if (v_across >= 0) return false;
    plane = from_px(across_span.hi);
    lead_prev = prev_across;
    lead_now = across;
    if (!(lead_prev >= plane && lead_now < plane)) return false;
  } else {
    if (v_across <= 0) return false;
    plane = from_px(across_span.lo);
    lead_prev = prev_across + size;
    lead_now = across + size;
    if (!(lead_prev <= plane && lead_now > plane)) return false;
  }
  const std::int64_t num = lead_prev - plane;
  const std::int64_t den = lead_prev - lead_now;
  const Fixed along_hit =
      prev_along + static_cast<Fixed>(static_cast<std::int64_t>(along - prev_along) * num / den);
  if (along_hit >= from_px(along_span.hi) || along_hit + size <= from_px(along_span.lo)) {
    return false;
  }
  across = facing > 0 ? plane : plane - size;
  along = along_hit;

  const double ball_center = along_hit + size / 2.0;
  const double paddle_center = from_px(along_span.lo + along_span.hi) / 2.0;
  const double half = (from_px(along_span.hi - along_span.lo) + size) / 2.0;
  const int bin = std::clamp(static_cast<int>(std::lround(max_bin * (ball_center - paddle_center) / half)),
                             -max_bin, max_bin);
  speed = std::min(speed + VideoOlympics::kSpeedStep, VideoOlympics::kMaxSpeed);
  const fx::Unit u = kAngle15[std::abs(bin)];
  v_across = facing * fx::scale(speed, u.x);
  v_along = (bin < 0 ? -1 : 1) * fx::scale(speed, u.y);
  return true;
}

bool overlaps(Fixed x, Fixed y, int size, int rx, int ry, int rw, int rh) {
  return x < from_px(rx + rw) && x + from_px(size) > from_px(rx) && y < from_px(ry + rh) &&
         y + from_px(size) > from_px(ry);
}

int bin7(int rel) {
  if (rel < -24) return 0;
  if (rel < -12) return 1;
  if (rel < -4) return 2;
  if (rel <= 4) return 3;
  if (rel <= 12) return 4;
  if (rel <= 24) return 5;
  return 6;
}

}  // namespace

VideoOlympics::VideoOlympics(ModeId mode) {
  const VideoOlympicsMode decoded = decode_video_olympics_mode(mode);
  variant_ = decoded.game;
  players_ = decoded.players;
  if (variant_ == VideoOlympicsGame::kFoozpong || variant_ == VideoOlympicsGame::kBasketball) {
    throw Error(ErrorCode::kUnsupportedMode,
                "video_olympics mode " + std::to_string(mode.value) + " has no dynamics");
  }
}

std::vector<Action> VideoOlympics::minimal_actions(ModeId mode) {
  switch (decode_video_olympics_mode(mode).game) {
    case VideoOlympicsGame::kQuadrapong:
      return {Action::kNoop, Action::kUp, Action::kRight, Action::kLeft, Action::kDown};
    case VideoOlympicsGame::kVolleyball:
      return {Action::kNoop,    Action::kUp,     Action::kRight,
              Action::kLeft,    Action::kUpRight, Action::kUpLeft};
    default:
      return {Action::kNoop, Action::kUp, Action::kDown};
  }
}

void VideoOlympics::reset(Rng& rng) {
  clear_terminal();
  scores_ = {0, 0};
  frame_ = 0;
  paddle_hits_ = 0;
  paddles_.assign(static_cast<std::size_t>(players_), Paddle{});
  for (int p = 0; p < players_; ++p) paddles_[static_cast<std::size_t>(p)].team = p % 2;

  const int mid = (kTop + kBottom) / 2;
  switch (variant_) {
    case VideoOlympicsGame::kPong: {
      constexpr int kXs[4] = {16, 140, 48, 108};
      for (int p = 0; p < players_; ++p) {
        auto& pad = paddles_[static_cast<std::size_t>(p)];
        pad.x = kXs[p];
        pad.y = mid - pad.h / 2;
      }
      break;
    }
    case VideoOlympicsGame::kQuadrapong: {
      auto& left = paddles_[0];
      left.x = kArenaLeft + 4;
      left.y = mid - 8;
      auto& right = paddles_[2];
      right.x = kArenaRight - 8;
      right.y = mid - 8;
      auto& top = paddles_[1];
      top.w = 16;
      top.h = 4;
      top.x = 72;
      top.y = kTop + 4;
      auto& bottom = paddles_[3];
      bottom.w = 16;
      bottom.h = 4;
      bottom.x = 72;
      bottom.y = kBottom - 8;
      break;
    }
    case VideoOlympicsGame::kVolleyball: {
      constexpr int kXs2[2] = {36, 116};
      constexpr int kXs4[4] = {20, 132, 52, 100};
      for (int p = 0; p < players_; ++p) {
        auto& pad = paddles_[static_cast<std::size_t>(p)];
        pad.w = kPlayerW;
        pad.h = kPlayerH;
        pad.x = players_ == 2 ? kXs2[p] : kXs4[p];
        pad.fy = from_px(kFloor - kPlayerH);
        pad.y = kFloor - kPlayerH;
      }
      break;
    }
    default:
      break;
  }
  serving_team_ = rng.below(2);
  serve(rng);
}

void VideoOlympics::serve(Rng& rng) {
  serve_timer_ = kServePause;
  ball_ = Ball{};
  switch (variant_) {
    case VideoOlympicsGame::kPong: {
      ball_.x = from_px(79);
      ball_.y = from_px((kTop + kBottom) / 2 - 1);
      const int bins[4] = {-2, -1, 1, 2};
      const int bin = bins[rng.below(4)];
      const int dir = rng.below(2) == 0 ? -1 : 1;
      const fx::Unit u = kAngle15[std::abs(bin)];
      ball_.vx = dir * fx::scale(ball_.speed, u.x);
      ball_.vy = (bin < 0 ? -1 : 1) * fx::scale(ball_.speed, u.y);
      break;
    }
    case VideoOlympicsGame::kQuadrapong: {
      ball_.x = from_px(79);
      ball_.y = from_px((kTop + kBottom) / 2 - 1);
      const int quadrant = rng.below(4);
      const fx::Unit u = fx::compass32(quadrant * 8 + rng.between(2, 6));
      ball_.vx = fx::scale(ball_.speed, u.x);
      ball_.vy = fx::scale(ball_.speed, u.y);
      break;
    }
    case VideoOlympicsGame::kVolleyball: {
      ball_.x = from_px(serving_team_ == 0 ? 38 : 118);
      ball_.y = from_px(60);
      break;
    }
    default:
      break;
  }
}

void VideoOlympics::move_paddles(std::span<const Action> actions) {
  for (int p = 0; p < players_; ++p) {
    auto& pad = paddles_[static_cast<std::size_t>(p)];
    const Joystick j = read_joystick(actions[static_cast<std::size_t>(p)]);
    if (variant_ == VideoOlympicsGame::kPong) {
      pad.y = std::clamp(pad.y + j.dy * kPaddleSpeed, kTop, kBottom - pad.h);
    } else if (variant_ == VideoOlympicsGame::kQuadrapong) {
      if (p % 2 == 0) {
        pad.y = std::clamp(pad.y + j.dy * kPaddleSpeed, kTop + kCorner, kBottom - kCorner - pad.h);
      } else {
        pad.x = std::clamp(pad.x + j.dx * kPaddleSpeed, kArenaLeft + kCorner,
                           kArenaRight - kCorner - pad.w);
      }
    }
  }
}

int VideoOlympics::advance_pong_ball() {
  if (serve_timer_ > 0) {
    --serve_timer_;
    return -1;
  }
  const Ball prev = ball_;
  ball_.x += ball_.vx;
  ball_.y += ball_.vy;
  const Fixed top = from_px(kTop);
  const Fixed bottom = from_px(kBottom - kBallSize);
  if (ball_.y < top) {
    ball_.y = 2 * top - ball_.y;
    ball_.vy = -ball_.vy;
  } else if (ball_.y > bottom) {
    ball_.y = 2 * bottom - ball_.y;
    ball_.vy = -ball_.vy;
  }
  for (const auto& pad : paddles_) {
    const int facing = pad.team == 0 ? 1 : -1;
    if (paddle_bounce(ball_.x, prev.x, ball_.y, prev.y, ball_.vx, ball_.vy, ball_.speed,
                      {pad.x, pad.x + pad.w}, {pad.y, pad.y + pad.h}, facing, 3)) {
      ++paddle_hits_;
      break;
    }
  }
  if (ball_.x < from_px(kLeftGoal)) return 0;
  if (ball_.x + from_px(kBallSize) > from_px(kRightGoal)) return 1;
  return -1;
}

int VideoOlympics::advance_quadrapong_ball() {
  if (serve_timer_ > 0) {
    --serve_timer_;
    return -1;
  }
  const Ball prev = ball_;
  ball_.x += ball_.vx;
  ball_.y += ball_.vy;

  const int corners[4][2] = {{kArenaLeft, kTop},
                             {kArenaRight - kCorner, kTop},
                             {kArenaLeft, kBottom - kCorner},
                             {kArenaRight - kCorner, kBottom - kCorner}};
  for (const auto& c : corners) {
    if (!overlaps(ball_.x, ball_.y, kBallSize, c[0], c[1], kCorner, kCorner)) continue;
    const bool was_clear_x = !overlaps(prev.x, ball_.y, kBallSize, c[0], c[1], kCorner, kCorner);
    if (was_clear_x) {
      ball_.x = prev.x;
      ball_.vx = -ball_.vx;
    } else {
      ball_.y = prev.y;
      ball_.vy = -ball_.vy;
    }
  }

  for (int p = 0; p < players_; ++p) {
    const auto& pad = paddles_[static_cast<std::size_t>(p)];
    bool hit = false;
    if (p % 2 == 0) {
      const int facing = p == 0 ? 1 : -1;
      hit = paddle_bounce(ball_.x, prev.x, ball_.y, prev.y, ball_.vx, ball_.vy, ball_.speed,
                          {pad.x, pad.x + pad.w}, {pad.y, pad.y + pad.h}, facing, 3);
    } else {
      const int facing = p == 1 ? 1 : -1;
      hit = paddle_bounce(ball_.y, prev.y, ball_.x, prev.x, ball_.vy, ball_.vx, ball_.speed,
                          {pad.y, pad.y + pad.h}, {pad.x, pad.x + pad.w}, facing, 3);
    }
    if (hit) {
      ++paddle_hits_;
      break;
    }
  }

  const Fixed size = from_px(kBallSize);
  if (ball_.x < from_px(kArenaLeft) || ball_.x + size > from_px(kArenaRight)) return 0;
  if (ball_.y < from_px(kTop) || ball_.y + size > from_px(kBottom)) return 1;
  return -1;
}

int VideoOlympics::advance_volleyball(std::span<const Action> actions) {
  const Fixed ground = from_px(kFloor - kPlayerH);
  for (int p = 0; p < players_; ++p) {
    auto& pad = paddles_[static_cast<std::size_t>(p)];
    const Joystick j = read_joystick(actions[static_cast<std::size_t>(p)]);
    const int lo = pad.team == 0 ? kCourtLeft : kNetRight;
    const int hi = pad.team == 0 ? kNetLeft - pad.w : kCourtRight - pad.w;
    pad.x = std::clamp(pad.x + 2 * j.dx, lo, hi);
    if (j.dy < 0 && pad.fy == ground) pad.vy = -kJump;
    if (pad.fy < ground || pad.vy != 0) {
      pad.vy += kPlayerGravity;
      pad.fy += pad.vy;
      if (pad.fy >= ground) {
        pad.fy = ground;
        pad.vy = 0;
      }
    }
    pad.y = fx::to_px(pad.fy);
    if (pad.hit_cooldown > 0) --pad.hit_cooldown;
  }

  if (serve_timer_ > 0) {
    --serve_timer_;
    return -1;
  }

  const Fixed size = from_px(kBallSize);
  const Ball prev = ball_;
  ball_.vy = std::min(ball_.vy + kBallGravity, 4 * fx::kOne);
  ball_.x += ball_.vx;
  ball_.y += ball_.vy;

  if (ball_.x < from_px(kCourtLeft)) {
    ball_.x = 2 * from_px(kCourtLeft) - ball_.x;
    ball_.vx = -ball_.vx;
  } else if (ball_.x + size > from_px(kCourtRight)) {
    ball_.x = 2 * (from_px(kCourtRight) - size) - ball_.x;
    ball_.vx = -ball_.vx;
  }
  if (ball_.y < from_px(kTop)) {
    ball_.y = 2 * from_px(kTop) - ball_.y;
    ball_.vy = -ball_.vy;
  }
  if (overlaps(ball_.x, ball_.y, kBallSize, kNetLeft, kNetTop, kNetRight - kNetLeft,
               kFloor - kNetTop)) {
    if (prev.y + size <= from_px(kNetTop)) {
      ball_.y = from_px(kNetTop) - size;
      ball_.vy = -std::abs(ball_.vy);
    } else if (prev.x + size <= from_px(kNetLeft)) {
      ball_.x = from_px(kNetLeft) - size;
      ball_.vx = -std::abs(ball_.vx);
    } else {
      ball_.x = from_px(kNetRight);
      ball_.vx = std::abs(ball_.vx);
    }
  }

  for (auto& pad : paddles_) {
    if (pad.hit_cooldown > 0) continue;
    if (!overlaps(ball_.x, ball_.y, kBallSize, pad.x, pad.y, pad.w, pad.h)) continue;
    const int dir = pad.team == 0 ? 1 : -1;
    const double offset = ((ball_.x + size / 2.0) - (from_px(pad.x) + from_px(pad.w) / 2.0)) /
                          ((from_px(pad.w) + size) / 2.0);
    ball_.vy = -kJump + std::min(pad.vy, 0) / 2;
    ball_.vx = std::clamp(dir * fx::kOne + static_cast<Fixed>(std::lround(offset * 384.0)),
                          -3 * fx::kOne, 3 * fx::kOne);
    pad.hit_cooldown = 8;
    ++paddle_hits_;
    break;
  }

  if (ball_.y + size >= from_px(kFloor)) {
    return ball_.x + size / 2 < from_px(80) ? 0 : 1;
  }
  return -1;
}

StepOutcome VideoOlympics::step(std::span<const Action> actions, Rng& rng) {
  StepOutcome out;
  out.rewards.assign(static_cast<std::size_t>(players_), 0);
  ++frame_;

  int conceded = -1;
  if (variant_ == VideoOlympicsGame::kVolleyball) {
    conceded = advance_volleyball(actions);
  } else {
    move_paddles(actions);
    conceded = variant_ == VideoOlympicsGame::kQuadrapong ? advance_quadrapong_ball()
                                                          : advance_pong_ball();
  }

  if (conceded >= 0) {
    out.progress = true;
    for (int p = 0; p < players_; ++p) {
      out.rewards[static_cast<std::size_t>(p)] = p % 2 == conceded ? -1 : 1;
    }
    const int scorer = 1 - conceded;
    ++scores_[static_cast<std::size_t>(scorer)];
    if (scores_[static_cast<std::size_t>(scorer)] >= kScoreLimit) {
      end(TerminalCause::kScoreLimit);
      return out;
    }
    serving_team_ = conceded;
    serve(rng);
  }
  if (frame_ >= kFrameLimit) end(TerminalCause::kTime);
  return out;
}

void VideoOlympics::render(Screen& screen) const {
  screen.clear(kBackground);
  draw_number(screen, 40, 6, scores_[0], kTeamColor[0]);
  draw_number(screen, 104, 6, scores_[1], kTeamColor[1]);

  switch (variant_) {
    case VideoOlympicsGame::kPong:
      screen.fill_rect(0, kTop - 4, Screen::kWidth, 4, kWall);
      screen.fill_rect(0, kBottom, Screen::kWidth, 4, kWall);
      break;
    case VideoOlympicsGame::kQuadrapong: {
      const int h = kBottom - kTop;
      const int w = kArenaRight - kArenaLeft;
      screen.fill_rect(kArenaLeft - 2, kTop, 2, h, kTeamColor[0]);
      screen.fill_rect(kArenaRight, kTop, 2, h, kTeamColor[0]);
      screen.fill_rect(kArenaLeft, kTop - 2, w, 2, kTeamColor[1]);
      screen.fill_rect(kArenaLeft, kBottom, w, 2, kTeamColor[1]);
      screen.fill_rect(kArenaLeft, kTop, kCorner, kCorner, kCornerColor);
      screen.fill_rect(kArenaRight - kCorner, kTop, kCorner, kCorner, kCornerColor);
      screen.fill_rect(kArenaLeft, kBottom - kCorner, kCorner, kCorner, kCornerColor);
      screen.fill_rect(kArenaRight - kCorner, kBottom - kCorner, kCorner, kCorner, kCornerColor);
      break;
    }
    case VideoOlympicsGame::kVolleyball:
      screen.fill_rect(0, kFloor, Screen::kWidth, Screen::kHeight - kFloor, kWall);
      screen.fill_rect(kNetLeft, kNetTop, kNetRight - kNetLeft, kFloor - kNetTop, kWall);
      screen.fill_rect(0, kTop - 2, Screen::kWidth, 2, kWall);
      break;
    default:
      break;
  }

  for (const auto& pad : paddles_) {
    screen.fill_rect(pad.x, pad.y, pad.w, pad.h, kTeamColor[pad.team]);
  }
  screen.fill_rect(fx::to_px(ball_.x), fx::to_px(ball_.y), kBallSize, kBallSize, kBallColor);
}

LivesVector VideoOlympics::lives() const {
  return LivesVector(static_cast<std::size_t>(players_), 0);
}

std::vector<int> VideoOlympics::features(int player) const {
  const auto& pad = paddles_[static_cast<std::size_t>(player)];
  const int bx = fx::to_px(ball_.x) + kBallSize / 2;
  const int by = fx::to_px(ball_.y) + kBallSize / 2;

  if (variant_ == VideoOlympicsGame::kVolleyball) {
    const int cx = pad.x + pad.w / 2;
    const int height = by < 100 ? 0 : (by < 150 ? 1 : 2);
    const bool my_side = (bx < 80) == (pad.team == 0);
    const bool grounded = pad.fy == from_px(kFloor - kPlayerH);
    return {bin7(bx - cx), height, my_side ? 1 : 0, grounded ? 1 : 0};
  }

  const bool vertical = variant_ == VideoOlympicsGame::kPong || player % 2 == 0;
  const int along = vertical ? by - (pad.y + pad.h / 2) : bx - (pad.x + pad.w / 2);
  int toward = 0;
  int distance = 0;
  if (variant_ == VideoOlympicsGame::kPong) {
    toward = pad.team == 0 ? (ball_.vx < 0) : (ball_.vx > 0);
    distance = std::abs(bx - (pad.x + pad.w / 2));
  } else if (vertical) {
    toward = player == 0 ? (ball_.vx < 0) : (ball_.vx > 0);
    distance = std::abs(bx - (pad.x + pad.w / 2));
  } else {
    toward = player == 1 ? (ball_.vy < 0) : (ball_.vy > 0);
    distance = std::abs(by - (pad.y + pad.h / 2));
  }
  if (serve_timer_ > 0) toward = 0;
  const int dist_bin = distance < 24 ? 0 : (distance < 72 ? 1 : 2);
  return {bin7(along), toward, dist_bin};
}

}  // namespace maale
