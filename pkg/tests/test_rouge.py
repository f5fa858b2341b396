import random

import pytest

from clustsum.rouge import extract_ngrams, rouge_n


def oracle_clipped_overlap(cand_grams, ref_grams):
    """Explicit multiset intersection over n-gram lists."""
    overlap = 0
    for gram in set(cand_grams):
        overlap += min(cand_grams.count(gram), ref_grams.count(gram))
    return overlap


def token_stream(rng, length, vocab=("a", "b", "c", "d", "e")):
    return " ".join(rng.choice(vocab) for _ in range(length))


class TestExtractNgrams:
    def test_lowercase_and_punctuation_drop(self):
        assert extract_ngrams("The cat.", 1) == {("the",): 1, ("cat",): 1}

    def test_repeated_bigram(self):
        assert extract_ngrams("a a a", 2) == {("a", "a"): 2}

    def test_empty_text(self):
        assert extract_ngrams("", 1) == {}
        assert extract_ngrams("   ", 2) == {}

    def test_bigrams_stop_at_sentence_boundary(self):
        grams = extract_ngrams("One two. Three four.", 2)
        assert ("two", "three") not in grams
        assert grams == {("one", "two"): 1, ("three", "four"): 1}

    def test_invalid_n(self):
        with pytest.raises(ValueError):
            extract_ngrams("a b c", 3)


class TestRougeN:
    def test_identical_texts_score_one(self):
        for text in ("A cat sat.", "Numbers 12 and 14 overlap."):
            for n in (1, 2):
                score = rouge_n(text, text, n)
                assert score.recall == 1.0
                assert score.precision == 1.0
                assert score.f1 == 1.0

    def test_worked_unigram_example(self):
        score = rouge_n("the cat sat on the mat", "the cat was on the mat", 1)
        assert score.recall == pytest.approx(5 / 6)
        assert score.precision == pytest.approx(5 / 6)

    def test_worked_bigram_example(self):
        score = rouge_n("the cat sat on the mat", "the cat was on the mat", 2)
        assert score.recall == pytest.approx(3 / 5)

    def test_disjoint_vocabulary_scores_zero(self):
        score = rouge_n("alpha beta gamma", "delta epsilon zeta", 1)
        assert score.recall == 0.0
        assert score.precision == 0.0
        assert score.f1 == 0.0

    def test_empty_reference_scores_zero(self):
        score = rouge_n("some words", "", 1)
        assert (score.recall, score.precision, score.f1) == (0.0, 0.0, 0.0)

    def test_clipping_under_candidate_duplication(self):
        # Clipping caps the credit a repeated n-gram can earn: repeating the
        # whole candidate (as a fresh sentence, so no junction bigrams appear)
        # never raises precision, and recall stays within [base, 1].
        rng = random.Random(51)
        vocab = ("Alpha", "Beta", "Gamma", "Delta", "Epsilon")
        for _ in range(200):
            cand = " ".join(rng.choice(vocab) for _ in range(rng.randint(1, 25)))
            ref = " ".join(rng.choice(vocab) for _ in range(rng.randint(1, 25)))
            for n in (1, 2):
                base = rouge_n(cand, ref, n)
                doubled = rouge_n(cand + ". " + cand, ref, n)
                assert doubled.precision <= base.precision + 1e-12
                assert base.recall - 1e-12 <= doubled.recall <= 1.0

    def test_agreement_with_multiset_oracle(self):
        rng = random.Random(52)
        for _ in range(200):
            cand_tokens = [rng.choice("abcdef") for _ in range(rng.randint(0, 30))]
            ref_tokens = [rng.choice("abcdef") for _ in range(rng.randint(1, 30))]
            cand = " ".join(cand_tokens)
            ref = " ".join(ref_tokens)
            for n in (1, 2):
                cand_grams = [
                    tuple(cand_tokens[i : i + n]) for i in range(len(cand_tokens) - n + 1)
                ]
                ref_grams = [
                    tuple(ref_tokens[i : i + n]) for i in range(len(ref_tokens) - n + 1)
                ]
                overlap = oracle_clipped_overlap(cand_grams, ref_grams)
                expected_recall = overlap / len(ref_grams) if ref_grams else 0.0
                expected_precision = overlap / len(cand_grams) if cand_grams else 0.0
                score = rouge_n(cand, ref, n)
                assert score.recall == pytest.approx(expected_recall, abs=1e-12)
                assert score.precision == pytest.approx(expected_precision, abs=1e-12)

    def test_scores_bounded(self):
        rng = random.Random(53)
        for _ in range(100):
            cand = token_stream(rng, rng.randint(0, 20))
            ref = token_stream(rng, rng.randint(0, 20))
            score = rouge_n(cand, ref, 1)
            assert 0.0 <= score.recall <= 1.0
            assert 0.0 <= score.precision <= 1.0
            assert 0.0 <= score.f1 <= 1.0
