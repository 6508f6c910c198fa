#pragma once

#include <array>
#include <vector>

#include "maale/games/fixed_point.hpp"
#include "maale/games/game.hpp"
#include "maale/games/modes.hpp"

namespace maale {

// Video Olympics paddle games: classic pong (2 and 4 players), quadrapong
// and volleyball. Four-player variants are 2v2 with team = seat % 2 and
// rewards shared within a team.
class VideoOlympics final : public Game {
 public:
  static constexpr int kScoreLimit = 10;
  static constexpr int kFrameLimit = 10'000;
  static constexpr int kServePause = 30;
  static constexpr fx::Fixed kServeSpeed = 2 * fx::kOne;
  static constexpr fx::Fixed kSpeedStep = fx::kOne / 4;
  static constexpr fx::Fixed kMaxSpeed = 4 * fx::kOne;
  static constexpr int kBallSize = 3;

  struct Ball {
    fx::Fixed x = 0;
    fx::Fixed y = 0;
    fx::Fixed vx = 0;
    fx::Fixed vy = 0;
    fx::Fixed speed = kServeSpeed;
  };

  struct Paddle {
    int x = 0;
    int y = 0;
    int w = 4;
    int h = 16;
    int team = 0;
    // Volleyball only: vertical position/velocity in fixed point.
    fx::Fixed fy = 0;
    fx::Fixed vy = 0;
    int hit_cooldown = 0;
  };

  explicit VideoOlympics(ModeId mode);

  int num_players() const override { return players_; }
  void reset(Rng& rng) override;
  StepOutcome step(std::span<const Action> actions, Rng& rng) override;
  void render(Screen& screen) const override;
  LivesVector lives() const override;
  std::vector<int> features(int player) const override;

  VideoOlympicsGame variant() const { return variant_; }
  const Ball& ball() const { return ball_; }
  const std::vector<Paddle>& paddles() const { return paddles_; }
  const std::array<int, 2>& team_scores() const { return scores_; }
  int serve_timer() const { return serve_timer_; }
  int paddle_hits() const { return paddle_hits_; }

  static std::vector<Action> minimal_actions(ModeId mode);

 private:
  void serve(Rng& rng);
  void move_paddles(std::span<const Action> actions);
  // Returns the team that conceded, or -1.
  int advance_pong_ball();
  int advance_quadrapong_ball();
  int advance_volleyball(std::span<const Action> actions);

  VideoOlympicsGame variant_;
  int players_;
  Ball ball_;
  std::vector<Paddle> paddles_;
  std::array<int, 2> scores_{};
  int serve_timer_ = 0;
  int serving_team_ = 0;
  int frame_ = 0;
  int paddle_hits_ = 0;
};

}  // namespace maale
