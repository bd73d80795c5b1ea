//! Orthographic syllable counting for German words.
//!
//! A syllable nucleus is a vowel unit. Within a run of vowels, diphthongs
//! (`ei`, `ai`, `au`, `eu`, `äu`, `ie`, `ey`, `ay`) and doubled vowels
//! (`aa`, `ee`, `oo`) form one unit; every other vowel letter is its own
//! unit. `u` after `q` is treated as a consonant.

const DIGRAPHS: [&str; 11] = [
    "ei", "ai", "au", "eu", "äu", "ie", "ey", "ay", "aa", "ee", "oo",
];

fn is_vowel(c: char) -> bool {
    matches!(
        c,
        'a' | 'e'
            | 'i'
            | 'o'
            | 'u'
            | 'y'
            | 'ä'
            | 'ö'
            | 'ü'
            | 'á'
            | 'à'
            | 'é'
            | 'è'
            | 'ê'
            | 'í'
            | 'ó'
            | 'ú'
    )
}

/// Number of syllables in `word`, at least 1.
pub fn count_syllables(word: &str) -> u32 {
    let chars: Vec<char> = word.chars().flat_map(char::to_lowercase).collect();
    let mut count = 0u32;
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let after_q = i > 0 && chars[i - 1] == 'q' && c == 'u';
        if !is_vowel(c) || after_q {
            i += 1;
            continue;
        }
        if i + 1 < chars.len() {
            let pair: String = [c, chars[i + 1]].iter().collect();
            if DIGRAPHS.contains(&pair.as_str()) {
                count += 1;
                i += 2;
                continue;
            }
        }
        count += 1;
        i += 1;
    }
    count.max(1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_examples() {
        assert_eq!(count_syllables("Hund"), 1);
        assert_eq!(count_syllables("Bäckerei"), 3);
        assert_eq!(count_syllables("Aue"), 2);
    }

    #[test]
    fn minimum_one() {
        assert_eq!(count_syllables("3"), 1);
        assert_eq!(count_syllables("Pfft"), 1);
    }

    #[test]
    fn qu_is_consonantal() {
        assert_eq!(count_syllables("Quelle"), 2);
        assert_eq!(count_syllables("bequem"), 2);
    }

    #[test]
    fn case_folding() {
        assert_eq!(count_syllables("ÄPFEL"), count_syllables("äpfel"));
    }
}
