#include <cmath>
#include <random>

#include "doctest.h"
#include "retarget/error.hpp"
#include "retarget/image_io.hpp"
#include "retarget/pipeline.hpp"
#include "support.hpp"

using namespace retarget;

namespace {

ForegroundSprite make_sprite(RasterImage rgba, double native_scale = 1.0) {
  ForegroundSprite s;
  s.rgba = std::move(rgba);
  s.native_scale = native_scale;
  s.source_box = {0, 0, s.rgba.height(), s.rgba.width()};
  return s;
}

ForegroundSprite uniform_sprite(int w, int h, float rgb, float alpha) {
  RasterImage img(w, h, 4, rgb);
  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) img.at(r, c, 3) = alpha;
  }
  return make_sprite(std::move(img));
}

// Straight per-pixel compositing of an independently resampled sprite.
RasterImage composite_oracle(const RasterImage& bg, const ForegroundSprite& s, const Footprint& f) {
  const RasterImage scaled = testing::naive_bilinear(s.rgba, f.width, f.height);
  RasterImage out = bg;
  for (int r = 0; r < f.height; ++r) {
    for (int c = 0; c < f.width; ++c) {
      const double a = scaled.at(r, c, 3);
      for (int k = 0; k < 3; ++k) {
        out.at(f.row + r, f.col + c, k) =
            static_cast<float>(a * scaled.at(r, c, k) + (1.0 - a) * bg.at(f.row + r, f.col + c, k));
      }
    }
  }
  return out;
}

PipelineConfig quick_config(std::uint64_t seed = 0) {
  PipelineConfig cfg;
  cfg.pso.swarm_size = 12;
  cfg.pso.max_iters = 20;
  cfg.pso.seed = seed;
  return cfg;
}

bool outside(const Footprint& f, int r, int c) {
  return r < f.row || r >= f.row + f.height || c < f.col || c >= f.col + f.width;
}

}  // namespace

TEST_CASE("merge") {
  std::mt19937_64 rng(41);
  const RasterImage bg = testing::random_image(12, 10, 3, rng);

  SUBCASE("transparent sprite leaves the background") {
    CHECK(merge(bg, uniform_sprite(4, 4, 0.9f, 0.0f), {2, 3, 1.0}) == bg);
  }
  SUBCASE("opaque sprite at the origin is copied") {
    ForegroundSprite s = make_sprite(testing::random_image(5, 4, 4, rng));
    for (int r = 0; r < 4; ++r) {
      for (int c = 0; c < 5; ++c) s.rgba.at(r, c, 3) = 1.0f;
    }
    const RasterImage out = merge(bg, s, {0, 0, 1.0});
    for (int r = 0; r < 10; ++r) {
      for (int c = 0; c < 12; ++c) {
        for (int k = 0; k < 3; ++k) {
          CHECK(out.at(r, c, k) == (r < 4 && c < 5 ? s.rgba.at(r, c, k) : bg.at(r, c, k)));
        }
      }
    }
  }
  SUBCASE("half-transparent black over white") {
    const RasterImage out = merge(RasterImage(8, 8, 3, 1.0f), uniform_sprite(3, 3, 0.0f, 0.5f), {2, 2, 2.0});
    for (int r = 0; r < 8; ++r) {
      for (int c = 0; c < 8; ++c) {
        CHECK(out.at(r, c, 0) == ((r >= 2 && c >= 2) ? 0.5f : 1.0f));
      }
    }
  }
  SUBCASE("random compositions match the oracle and are linear in alpha") {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 40; ++trial) {
      const ForegroundSprite s = make_sprite(testing::random_image(2 + trial % 5, 2 + trial % 3, 4, rng));
      const double size = 0.5 + 2.0 * u(rng);
      const Placement p = decode_placement(std::vector<double>{u(rng), u(rng), std::min({size, 12.0 / s.width(), 10.0 / s.height()})},
                                           12, 10, s.width(), s.height());
      const Footprint f = footprint_of(s, p);
      REQUIRE(f.inside(12, 10));
      const RasterImage out = merge(bg, s, p);
      CHECK(testing::max_abs_diff(out, composite_oracle(bg, s, f)) < 1e-5);

      const RasterImage scaled = testing::naive_bilinear(s.rgba, f.width, f.height);
      for (int r = 0; r < 10; ++r) {
        for (int c = 0; c < 12; ++c) {
          for (int k = 0; k < 3; ++k) {
            const double expected = outside(f, r, c)
                                        ? 0.0
                                        : scaled.at(r - f.row, c - f.col, 3) *
                                              (scaled.at(r - f.row, c - f.col, k) - bg.at(r, c, k));
            CHECK(out.at(r, c, k) - bg.at(r, c, k) == doctest::Approx(expected).epsilon(1e-5).scale(1.0));
          }
        }
      }
    }
  }
  SUBCASE("RGBA background alpha is composited too") {
    const RasterImage out = merge(RasterImage(4, 4, 4, 0.0f), uniform_sprite(2, 2, 1.0f, 0.25f), {1, 1, 1.0});
    CHECK(out.at(1, 1, 3) == doctest::Approx(0.25f));
    CHECK(out.at(0, 0, 3) == 0.0f);
  }
  SUBCASE("footprints leaving the canvas are rejected") {
    try {
      merge(bg, uniform_sprite(4, 4, 0.5f, 1.0f), {7.6, 0, 1.0});
      FAIL("expected FootprintOutOfBounds");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::FootprintOutOfBounds);
    }
  }
}

TEST_CASE("footprint rounding is half-up") {
  const ForegroundSprite s = uniform_sprite(10, 4, 0.0f, 1.0f);
  CHECK(footprint_of(s, {1.5, 2.49, 0.25}) == Footprint{2, 2, 1, 3});
  CHECK(footprint_of(s, {0.5, 0.5, 0.125}) == Footprint{1, 1, 1, 1});
}

TEST_CASE("placement_bounds") {
  PipelineConfig cfg;
  SUBCASE("sprite the size of the background") {
    cfg.size_min = 1.0;
    const SearchBounds b = placement_bounds(RasterImage(20, 10, 3), uniform_sprite(20, 10, 0, 1), cfg);
    CHECK(b.lower[2] == 1.0);
    CHECK(b.upper[2] == 1.0);
    const Placement p = decode_placement(std::vector<double>{0.7, 0.3, 1.0}, 20, 10, 20, 10);
    CHECK(footprint_of(uniform_sprite(20, 10, 0, 1), p) == Footprint{0, 0, 10, 20});
  }
  SUBCASE("100x100 background, 50x50 sprite, sizes 0.5 to 2") {
    cfg.size_min = 0.5;
    cfg.size_max = 2.0;
    const SearchBounds b = placement_bounds(RasterImage(100, 100, 3), uniform_sprite(50, 50, 0, 1), cfg);
    CHECK(b.lower == std::vector<double>{0.0, 0.0, 0.5});
    CHECK(b.upper == std::vector<double>{1.0, 1.0, 2.0});
  }
  SUBCASE("native scale anchors the size range") {
    const SearchBounds b =
        placement_bounds(RasterImage(100, 100, 3), make_sprite(RasterImage(40, 40, 4), 0.25), cfg);
    CHECK(b.lower[2] == doctest::Approx(0.125));
    CHECK(b.upper[2] == doctest::Approx(0.375));
  }
  SUBCASE("no feasible size") {
    try {
      placement_bounds(RasterImage(10, 10, 3), uniform_sprite(30, 5, 0, 1), cfg);
      FAIL("expected SpriteTooLarge");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::SpriteTooLarge);
    }
  }
  SUBCASE("every point of the box decodes to an in-bounds footprint") {
    std::mt19937_64 rng(42);
    std::uniform_int_distribution<int> bg_dim(5, 120), sp_dim(1, 200);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    int boxes = 0;
    while (boxes < 20) {
      const int bw = bg_dim(rng), bh = bg_dim(rng);
      const ForegroundSprite s = make_sprite(RasterImage(sp_dim(rng), sp_dim(rng), 4), 0.25);
      PipelineConfig c;
      c.size_min = 0.1 + u(rng);
      c.size_max = c.size_min + 2.0 * u(rng);
      SearchBounds b;
      try {
        b = placement_bounds(RasterImage(bw, bh, 3), s, c);
      } catch (const Error&) {
        continue;
      }
      ++boxes;
      std::vector<std::vector<double>> points;
      for (int corner = 0; corner < 8; ++corner) {
        points.push_back({corner & 1 ? b.upper[0] : b.lower[0], corner & 2 ? b.upper[1] : b.lower[1],
                          corner & 4 ? b.upper[2] : b.lower[2]});
      }
      for (int i = 0; i < 1000; ++i) {
        points.push_back({u(rng), u(rng), b.lower[2] + u(rng) * (b.upper[2] - b.lower[2])});
      }
      for (const auto& v : points) {
        const Placement p = decode_placement(v, bw, bh, s.width(), s.height());
        const Footprint f = footprint_of(s, p);
        REQUIRE(f.inside(bw, bh));
        CHECK(p.size == v[2]);
      }
    }
  }
}

TEST_CASE("retarget end to end") {
  std::mt19937_64 rng(43);

  SUBCASE("empty mask and unchanged size reproduce the input") {
    const RasterImage img = testing::random_image(24, 18, 3, rng, true);
    const RetargetResult r = retarget::retarget(img, BinaryMask(24, 18), {24, 18});
    CHECK(r.image == img);
    CHECK_FALSE(r.fitness.has_value());
    CHECK(r.trace.empty());
  }
  SUBCASE("output always has the target size") {
    const testing::Scene scene = testing::textured_scene(32, 24, {8, 10, 8, 9}, 7);
    for (const TargetSize t : {TargetSize{16, 12}, TargetSize{48, 20}, TargetSize{11, 40}, TargetSize{32, 24}}) {
      const RetargetResult r = retarget::retarget(scene.image, scene.mask, t, quick_config());
      CHECK(r.image.width() == t.width);
      CHECK(r.image.height() == t.height);
      REQUIRE(r.footprint.has_value());
      CHECK(r.footprint->inside(t.width, t.height));
      CHECK(r.fitness->total >= 0.0);
      CHECK(r.fitness->total <= 1.0);
      CHECK(r.fitness->total == r.trace.back().best_fitness);
    }
  }
  SUBCASE("footprint keeps the sprite's aspect ratio") {
    const testing::Scene scene = testing::textured_scene(40, 30, {5, 6, 9, 17}, 9);
    const RetargetResult r = retarget::retarget(scene.image, scene.mask, {25, 45}, quick_config(3));
    const auto& f = *r.footprint;
    const double s = r.placement->size;
    CHECK(std::abs(f.width - s * r.sprite_width) <= 0.5);
    CHECK(std::abs(f.height - s * r.sprite_height) <= 0.5);
  }
  SUBCASE("pixels outside the footprint are the carved background") {
    PipelineConfig cfg = quick_config(5);
    cfg.feather_radius = 0;
    const testing::Scene scene = testing::textured_scene(30, 30, {10, 10, 8, 8}, 11);
    const RetargetResult r = retarget::retarget(scene.image, scene.mask, {40, 22}, cfg);
    const Footprint f = *r.footprint;
    for (int row = 0; row < 22; ++row) {
      for (int c = 0; c < 40; ++c) {
        if (!outside(f, row, c)) continue;
        for (int k = 0; k < 3; ++k) REQUIRE(r.image.at(row, c, k) == r.background.at(row, c, k));
      }
    }
  }
  SUBCASE("seeded runs are identical, threaded or not") {
    const testing::Scene scene = testing::textured_scene(28, 20, {4, 4, 8, 8}, 13);
    PipelineConfig cfg = quick_config(99);
    const RetargetResult a = retarget::retarget(scene.image, scene.mask, {35, 15}, cfg);
    const RetargetResult b = retarget::retarget(scene.image, scene.mask, {35, 15}, cfg);
    cfg.pso.threads = 3;
    const RetargetResult c = retarget::retarget(scene.image, scene.mask, {35, 15}, cfg);
    CHECK(a.image == b.image);
    CHECK(a.image == c.image);
    CHECK(a.trace == c.trace);
  }
  SUBCASE("stage failures name the stage") {
    const testing::Scene scene = testing::textured_scene(16, 16, {4, 4, 4, 4}, 1);
    PipelineConfig cfg = quick_config();
    cfg.inpainter_command = "false";
    try {
      retarget::retarget(scene.image, scene.mask, {16, 16}, cfg);
      FAIL("expected StageError");
    } catch (const StageError& e) {
      CHECK(e.stage() == "inpaint");
      CHECK(e.code() == ErrorCode::ExternalToolFailed);
    }
    cfg = quick_config();
    cfg.size_min = 40.0;
    cfg.size_max = 40.0;
    try {
      retarget::retarget(scene.image, scene.mask, {16, 16}, cfg);
      FAIL("expected StageError");
    } catch (const StageError& e) {
      CHECK(e.stage() == "pso");
      CHECK(e.code() == ErrorCode::SpriteTooLarge);
    }
    CHECK_THROWS_AS(retarget::retarget(scene.image, BinaryMask(15, 16), {16, 16}), Error);
    cfg = quick_config();
    cfg.size_min = 0.0;
    CHECK_THROWS_AS(retarget::retarget(scene.image, scene.mask, {16, 16}, cfg), Error);
  }
  SUBCASE("an external scorer drives the search") {
    const testing::Scene scene = testing::textured_scene(16, 16, {4, 4, 4, 4}, 1);
    PipelineConfig cfg = quick_config();
    cfg.pso.swarm_size = 3;
    cfg.pso.max_iters = 2;
    cfg.scorer_command = "sh -c 'echo 0.5'";
    const RetargetResult r = retarget::retarget(scene.image, scene.mask, {20, 14}, cfg);
    CHECK(r.fitness->total == 0.5);
  }
}

TEST_CASE("PSO placement against the coarse grid oracle") {
  const testing::Scene scene = testing::rectangle_scene(64, 64, {24, 24, 16, 16}, 0.3f, 0.8f);
  PipelineConfig cfg;
  const RetargetResult base = retarget::retarget(scene.image, scene.mask, {128, 80}, cfg);
  const PlacementProblem problem(base.background, prepare_sprite(scene.image, scene.mask, cfg),
                                 foreground_area_ratio(scene.mask), cfg);
  const double oracle = testing::grid_oracle_best(problem);
  int wins = 0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    cfg.pso.seed = seed;
    const PsoResult r = pso_maximize([&](std::span<const double> v) { return problem.fitness(v); },
                                     problem.bounds(), cfg.pso);
    if (r.best_fitness >= 0.99 * oracle) ++wins;
  }
  CHECK(wins >= 9);
}
